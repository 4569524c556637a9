from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from negabent.boolfun import (
    AnfPolynomial,
    BooleanFunction,
    affine_compose,
    anf_from_table,
    degree,
    sigma_d,
    weight,
)
from negabent.errors import DimensionError
from negabent.gf2 import Gf2Matrix, inverse, vec_matmul, vector_from_int, vector_to_int


def tables(n):
    return st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n)


def functions(max_n=6):
    return st.integers(1, max_n).flatmap(lambda n: tables(n).map(BooleanFunction))


def test_table_validation():
    with pytest.raises(DimensionError):
        BooleanFunction([0, 1, 0])
    with pytest.raises(DimensionError):
        BooleanFunction([0, 1], n=2)
    with pytest.raises(ValueError):
        BooleanFunction([0, 2])
    f = BooleanFunction([0, 1, 1, 0])
    assert f.n == 2
    with pytest.raises(ValueError):
        f.table[0] = 1


def test_variable_uses_lsb_index():
    x1 = BooleanFunction.variable(3, 1)
    x3 = BooleanFunction.variable(3, 3)
    assert x1.table.tolist() == [0, 1] * 4
    assert x3.table.tolist() == [0] * 4 + [1] * 4
    assert x3([0, 0, 1]) == 1 and x3(4) == 1 and x3(3) == 0


def test_hex_layout():
    # x1 on 2 variables is 0,1,0,1 -> bits 1 and 3 set -> 0xa
    assert BooleanFunction.variable(2, 1).to_hex() == "a"
    assert BooleanFunction.variable(3, 1).to_hex() == "aa"
    assert BooleanFunction.from_hex("8").table.tolist() == [0, 0, 0, 1]
    assert BooleanFunction.from_hex("0x6", n=2).table.tolist() == [0, 1, 1, 0]
    assert BooleanFunction.from_hex("2", n=1).table.tolist() == [0, 1]
    assert BooleanFunction.from_hex("e8").n == 3
    assert BooleanFunction.from_hex("1234").n == 4


def test_hex_errors():
    for bad in ("", "zz", "0x"):
        with pytest.raises(ValueError):
            BooleanFunction.from_hex(bad)
    with pytest.raises(ValueError):
        BooleanFunction.from_hex("abc")
    with pytest.raises(ValueError):
        BooleanFunction.from_hex("f", n=1)


@settings(max_examples=100, deadline=None)
@given(functions(7))
def test_hex_roundtrip(f):
    assert BooleanFunction.from_hex(f.to_hex(), f.n) == f
    assert len(f.to_hex()) == -(-(1 << f.n) // 4)


@settings(max_examples=100, deadline=None)
@given(functions(6))
def test_anf_matches_subset_oracle(f):
    ref = oracles.anf_coefficients(f.table.tolist(), f.n)
    got = {sum(1 << (i - 1) for i in m) for m in anf_from_table(f).monomials}
    assert got == set(ref)
    assert degree(f) == max(oracles.degree(f.table.tolist(), f.n), 0)
    assert BooleanFunction.from_anf(f.anf()) == f


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.frozensets(st.integers(1, n)), max_size=8))))
def test_anf_evaluation_matches_oracle(case):
    n, mons = case
    p = AnfPolynomial(n, frozenset(mons))
    zero_based = [[i - 1 for i in m] for m in mons]
    assert BooleanFunction.from_anf(p).table.tolist() == oracles.table_from_monomials(zero_based, n)


def test_anf_parse_and_format():
    p = AnfPolynomial.parse("x1x2 + x3 ⊕ 1 + x2x1")
    assert p.n == 3
    assert p.monomials == frozenset({frozenset({3}), frozenset()})
    q = AnfPolynomial.parse("x1y2+y1", n=4, offsets={"x": 0, "y": 2})
    assert q.sorted_terms() == [(1, 4), (3,)]
    assert q.format({1: "x1", 2: "x2", 3: "y1", 4: "y2"}) == "x1y2+y1"
    assert str(AnfPolynomial.parse("0", 3)) == "0"
    assert str(AnfPolynomial.parse("1+x2x1", 2)) == "x1x2+1"


@pytest.mark.parametrize("bad", ["x1*x2", "x0", "z1", "x1++x2", "x"])
def test_anf_parse_errors(bad):
    with pytest.raises(ValueError):
        AnfPolynomial.parse(bad)


def test_anf_parse_n_too_small():
    with pytest.raises(ValueError):
        AnfPolynomial.parse("x4", n=3)


def test_constants_and_degree_conventions():
    assert BooleanFunction.zeros(3).degree == 0
    assert BooleanFunction.ones(3).degree == 0
    assert BooleanFunction.ones(3).weight == 8
    assert BooleanFunction.from_anf("x1x2x3").degree == 3


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("d", [1, 2, 3])
def test_sigma_d_matches_monomial_sum(n, d):
    if d > n:
        return
    assert sigma_d(n, d).table.tolist() == oracles.sigma(n, d)


def test_sigma_d_range():
    with pytest.raises(ValueError):
        sigma_d(3, 4)


@settings(max_examples=60, deadline=None)
@given(functions(5), st.data())
def test_affine_compose_pointwise(f, data):
    n = f.n
    C = Gf2Matrix(data.draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=n, max_size=n)))
    a = data.draw(st.integers(0, (1 << n) - 1))
    beta = data.draw(st.integers(0, (1 << n) - 1))
    zeta = data.draw(st.integers(0, 1))
    g = affine_compose(f, C, vector_from_int(a, n), vector_from_int(beta, n), zeta)
    for x in range(1 << n):
        y = vector_to_int(vec_matmul(vector_from_int(x, n), C)) ^ a
        assert g(x) == f(y) ^ oracles.dot(beta, x) ^ zeta


def test_affine_compose_inverse_roundtrip():
    rng = np.random.default_rng(3)
    f = BooleanFunction.random(5, rng)
    C = Gf2Matrix([[1, 1, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 1, 0], [0, 0, 0, 1, 1], [1, 0, 0, 0, 1]])
    assert affine_compose(affine_compose(f, C), inverse(C)) == f
    with pytest.raises(DimensionError):
        affine_compose(f, Gf2Matrix.identity(4))
    with pytest.raises(ValueError):
        affine_compose(f, Gf2Matrix.identity(5), zeta=2)


def test_operators():
    x1, x2 = BooleanFunction.variable(2, 1), BooleanFunction.variable(2, 2)
    assert (x1 & x2) == BooleanFunction.from_anf("x1x2", 2)
    assert (x1 ^ x2) == (x1 + x2) == BooleanFunction.linear([1, 1])
    assert (x1 ^ 1) == BooleanFunction.from_anf("x1+1", 2)
    assert weight(x1 * x2) == 1
    with pytest.raises(DimensionError):
        x1 ^ BooleanFunction.variable(3, 1)
    assert hash(x1) == hash(BooleanFunction.variable(2, 1))


def test_linear_function():
    f = BooleanFunction.linear([1, 0, 1])
    assert all(f(x) == oracles.dot(0b101, x) for x in range(8))
    assert f.anf().sorted_terms() == [(1,), (3,)]


def test_random_is_seeded():
    a = BooleanFunction.random(6, np.random.default_rng(1))
    b = BooleanFunction.random(6, np.random.default_rng(1))
    assert a == b


def test_sigma_2_anf_is_all_pairs():
    p = sigma_d(5, 2).anf()
    assert p.monomials == frozenset(frozenset(c) for c in combinations(range(1, 6), 2))
