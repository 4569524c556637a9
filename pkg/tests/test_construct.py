import json
import re

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from negabent.boolfun import BooleanFunction
from negabent.classify import is_bent, is_bent_negabent, sigma2
from negabent.construct import (
    ConstructionRecipe,
    build_bent_negabent,
    canonical_form,
    complete_linear_maps,
    degree_targeted_recipe,
    example_recipe,
    expected_degree,
    is_complete_linear_map,
    make_complete_linear_map,
    mm_function,
    quadratic_h,
    s_matrix,
)
from negabent.errors import DimensionError, InvalidRecipeError
from negabent.gf2 import Gf2Matrix, rank


def test_s_matrix_and_h():
    assert s_matrix(3).tolist() == [[0, 0, 0], [1, 0, 0], [1, 1, 0]]
    h = quadratic_h(2)
    # h(x1, x2, y1, y2) = x1 y1 + x2 y2 with x in the low bits
    assert all(h(z) == ((z & 1) & (z >> 2 & 1)) ^ ((z >> 1 & 1) & (z >> 3 & 1)) for z in range(16))


@pytest.mark.parametrize("m", range(2, 9))
def test_canonical_form(m):
    form = canonical_form(m)
    n = 2 * m
    assert form.A @ form.A == Gf2Matrix.identity(n)
    assert form.eps == int(m % 4 in (2, 3))
    ones = {2 * i - 1 for i in range(1, m // 2 + 1)}
    assert form.b.tolist() == [int(i in ones or i - m in ones) for i in range(n)]
    assert form.identity_holds()


def test_canonical_form_small_m_frozen():
    # m = 2: eps = 1 and b = (0, 1, 0, 1)
    form = canonical_form(2)
    assert form.A.tolist() == [[1, 0, 0, 0], [1, 1, 1, 0], [0, 0, 1, 0], [1, 0, 1, 1]]
    assert form.b.tolist() == [0, 1, 0, 1] and form.eps == 1
    with pytest.raises(ValueError):
        canonical_form(1)


def test_complete_linear_map_counts():
    assert [len(complete_linear_maps(m)) for m in (1, 2, 3)] == [0, 2, 48]
    brute = sum(
        oracles.rank(M) == 3 and oracles.rank([[M[i][j] ^ (i == j) for j in range(3)] for i in range(3)]) == 3
        for M in ([[int(b) for b in f"{k:09b}"[3 * r:3 * r + 3]] for r in range(3)] for k in range(512))
    )
    assert brute == 48


@pytest.mark.slow
def test_complete_linear_map_count_m4():
    assert len(complete_linear_maps(4)) == 5824


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2**31))
def test_make_complete_linear_map(m, seed):
    M = make_complete_linear_map(m, seed)
    assert M.shape == (m, m)
    assert is_complete_linear_map(M)
    assert make_complete_linear_map(m, seed) == M


def test_is_complete_linear_map_rejects():
    assert not is_complete_linear_map(Gf2Matrix.identity(3))
    assert not is_complete_linear_map(Gf2Matrix([[1, 1, 0]]))
    assert is_complete_linear_map(Gf2Matrix([[1, 1], [1, 0]]))


def test_mm_function_layout_and_bentness():
    M = Gf2Matrix([[0, 1], [1, 1]])
    g = BooleanFunction.from_anf("x1x2", 2)
    f = mm_function(2, M, g)
    for y in range(4):
        yM = oracles.vecmat(oracles.bits(y, 2), M.tolist())
        pi = yM[0] | yM[1] << 1
        for x in range(4):
            assert f(x + 4 * y) == oracles.dot(x, pi) ^ g(y)
    assert is_bent(f)
    with pytest.raises(DimensionError):
        mm_function(3, M, g)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_degree_targeted_outputs(m):
    for d in range(2, m + 1):
        for seed in range(5):
            r = degree_targeted_recipe(m, d, seed)
            f = build_bent_negabent(r)
            assert is_bent_negabent(f)
            assert f.degree == d == expected_degree(r)
            assert is_bent_negabent(f ^ sigma2(2 * m))


def test_degree_targeted_is_deterministic():
    a = build_bent_negabent(degree_targeted_recipe(4, 3, 17))
    b = build_bent_negabent(degree_targeted_recipe(4, 3, 17))
    assert a == b
    assert a != build_bent_negabent(degree_targeted_recipe(4, 3, 18))
    with pytest.raises(ValueError):
        degree_targeted_recipe(4, 5, 0)
    with pytest.raises(ValueError):
        degree_targeted_recipe(1, 1, 0)


def test_examples():
    f1 = build_bent_negabent(example_recipe(1))
    f2 = build_bent_negabent(example_recipe(2))
    assert (f1.n, f1.degree, f2.n, f2.degree) == (8, 4, 10, 5)
    assert is_bent_negabent(f1) and is_bent_negabent(f2)
    with pytest.raises(ValueError):
        example_recipe(3)


def test_recipe_json_roundtrip():
    r = degree_targeted_recipe(5, 4, 3)
    d = json.loads(r.to_json())
    assert set(d) == {"m", "M", "g_anf", "O", "alpha", "beta", "zeta"}
    assert d["O"].startswith("perm:")
    back = ConstructionRecipe.from_dict(d)
    assert build_bent_negabent(back) == build_bent_negabent(r)
    assert back.to_dict() == d


def test_recipe_with_general_orthogonal_matrix():
    O = Gf2Matrix(np.ones((4, 4), dtype=int)) ^ Gf2Matrix.identity(4)
    r = ConstructionRecipe(2, Gf2Matrix([[1, 1], [1, 0]]), BooleanFunction.zeros(2), O)
    d = r.to_dict()
    assert d["O"] == O.tolist()
    assert is_bent_negabent(build_bent_negabent(ConstructionRecipe.from_dict(d)))


@pytest.mark.parametrize(
    "change, message",
    [
        ({"M": [[1, 0], [0, 1]]}, "rank(M + I)"),
        ({"M": [[0, 0], [0, 0]]}, "rank(M) = m"),
        ({"O": [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}, "O O^T = I"),
        ({"m": 1, "M": [[1]], "O": "perm:0,1", "g_anf": "0"}, "m >= 2"),
    ],
)
def test_recipe_invariants(change, message):
    d = example_recipe(1).to_dict() | {"m": 2, "M": [[1, 1], [1, 0]], "g_anf": "y1y2", "O": "perm:0,1,2,3"}
    d |= change
    r = ConstructionRecipe.from_dict(d)
    with pytest.raises(InvalidRecipeError, match=re.escape(message)):
        build_bent_negabent(r)


@pytest.mark.parametrize("bad", [{}, {"m": 2, "M": "x"}, {"m": 2, "M": [[1, 1], [1, 0]], "O": "rot:1"},
                                 {"m": 2, "M": [[1, 1], [1, 0]], "g_anf": "z1"}])
def test_recipe_malformed(bad):
    with pytest.raises(InvalidRecipeError):
        ConstructionRecipe.from_dict(bad)


def test_nonpermutation_m_still_complete():
    M = Gf2Matrix([[0, 1, 1], [1, 1, 0], [1, 0, 0]])
    assert rank(M) == 3 and is_complete_linear_map(M)
