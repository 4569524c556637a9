"""Bent-negabent functions on n = 2m variables of any degree from 2 to m.

Pipeline: take a Maiorana-McFarland function ``f(x, y) = x.(y M) + g(y)``
where both M and M + I are invertible, then apply the affine substitution

    f'(z) = f(z O A + alpha) + beta.z + zeta

with A the fixed matrix that carries sigma_2 onto the canonical quadratic
form ``h(x, y) = x.y`` and O any orthogonal matrix. The degree of f' equals
the degree of f, which is ``max(2, deg g)``.

Coordinates: the first m inputs are x, the last m are y.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np

from .boolfun import AnfPolynomial, BooleanFunction, affine_compose, degree, parity, popcounts
from .classify import sigma2
from .errors import DimensionError, InvalidRecipeError, ConstantsMismatchError
from .gf2 import (
    Gf2Matrix,
    as_vector,
    block_diag,
    is_orthogonal,
    lambda_matrix,
    permutation_matrix,
    rank,
    vector_from_hex,
    vector_to_hex,
)

__all__ = [
    "CanonicalForm",
    "ConstructionRecipe",
    "canonical_form",
    "s_matrix",
    "quadratic_h",
    "is_complete_linear_map",
    "complete_linear_maps",
    "make_complete_linear_map",
    "mm_function",
    "build_bent_negabent",
    "degree_targeted_recipe",
    "degree_targeted_construct",
    "example_recipe",
    "lambda_matrix",
    "make_rng",
    "random_permutation_matrix",
    "xy_names",
    "expected_degree",
]

# Exhaustive identity check is done for 2m up to this many variables.
_VERIFY_LIMIT = 16


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator; every seeded routine in the package uses it."""
    return np.random.Generator(np.random.Philox(seed))


def s_matrix(m: int) -> Gf2Matrix:
    """Strictly lower-triangular all-ones m x m matrix."""
    return Gf2Matrix(np.tril(np.ones((m, m), dtype=np.uint8), -1))


def quadratic_h(m: int) -> BooleanFunction:
    """h(x, y) = x_1 y_1 + ... + x_m y_m on 2m variables."""
    idx = np.arange(1 << (2 * m), dtype=np.int64)
    mask = (1 << m) - 1
    return BooleanFunction(parity((idx & mask) & (idx >> m)))


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """Data with sigma_2(x) = h(x A + b) + eps on 2m variables."""

    m: int
    A: Gf2Matrix
    b: np.ndarray
    eps: int
    h: BooleanFunction

    def identity_holds(self) -> bool:
        lhs = sigma2(2 * self.m)
        rhs = affine_compose(self.h, self.A, self.b, None, self.eps)
        return lhs == rhs


@lru_cache(maxsize=None)
def canonical_form(m: int, verify: bool = True) -> CanonicalForm:
    """A, b and eps with sigma_2(x) = h(x A + b) + eps.

    With ``verify`` (the default) the involution A A = I is checked, and for
    2m <= 16 the identity is checked at every point; a failure raises
    :class:`ConstantsMismatchError` rather than being patched.
    """
    if m < 2:
        raise ValueError(f"canonical form needs m >= 2, got {m}")
    S = s_matrix(m).array
    T = S ^ np.eye(m, dtype=np.uint8)
    A = Gf2Matrix(np.block([[T, S], [S, T]]))
    b = np.zeros(2 * m, dtype=np.uint8)
    for i in range(1, m // 2 + 1):
        b[2 * i - 1] = 1
        b[m + 2 * i - 1] = 1
    eps = 1 if m % 4 in (2, 3) else 0
    form = CanonicalForm(m, A, as_vector(b), eps, quadratic_h(m))
    if not verify:
        return form
    if A @ A != Gf2Matrix.identity(2 * m):
        raise ConstantsMismatchError(f"A is not an involution for m={m}")
    if 2 * m <= _VERIFY_LIMIT and not form.identity_holds():
        raise ConstantsMismatchError(
            f"sigma_2(x) != h(xA + b) + eps on {2 * m} variables under the x_1-is-LSB convention"
        )
    return form


# -- complete linear maps --------------------------------------------------


def is_complete_linear_map(M: Gf2Matrix) -> bool:
    """M and M + I both invertible, i.e. y -> yM and y -> y(M + I) are permutations."""
    if not M.is_square:
        return False
    n = M.rows
    return rank(M) == n and rank(M ^ Gf2Matrix.identity(n)) == n


@lru_cache(maxsize=None)
def complete_linear_maps(m: int) -> tuple[Gf2Matrix, ...]:
    """Every m x m complete linear map, by exhaustive search (m <= 4)."""
    if not 1 <= m <= 4:
        raise ValueError("exhaustive enumeration is limited to m <= 4")
    found = []
    for bits in itertools.product((0, 1), repeat=m * m):
        M = Gf2Matrix(np.array(bits, dtype=np.uint8).reshape(m, m))
        if is_complete_linear_map(M):
            found.append(M)
    return tuple(found)


def make_complete_linear_map(m: int, seed: int) -> Gf2Matrix:
    """Block-diagonal complete linear map assembled from 2x2 and 3x3 blocks.

    m = 2k uses k blocks of size 2; m = 2k + 1 uses one 3x3 block and k - 1 of
    size 2. The seed picks each block from the full list of valid blocks and
    the position of the 3x3 block.
    """
    if m < 2:
        raise ValueError("no complete linear map exists for m < 2")
    rng = make_rng(seed)
    sizes = [2] * (m // 2) if m % 2 == 0 else [3] + [2] * ((m - 3) // 2)
    rng.shuffle(sizes)
    blocks = []
    for k in sizes:
        choices = complete_linear_maps(k)
        blocks.append(choices[int(rng.integers(len(choices)))])
    M = block_diag(blocks)
    assert is_complete_linear_map(M)
    return M


# -- Maiorana-McFarland assembly -------------------------------------------


def mm_function(m: int, M: Gf2Matrix, g: BooleanFunction) -> BooleanFunction:
    """f(x, y) = x.(y M) + g(y) on 2m variables."""
    if M.shape != (m, m):
        raise DimensionError(f"M must be {m}x{m}, got {M.shape}")
    if g.n != m:
        raise DimensionError(f"g must have {m} variables, got {g.n}")
    # y M as an index, for every y
    pi = np.zeros(1, dtype=np.int64)
    for r in M.row_ints():
        pi = np.concatenate([pi, pi ^ r])
    x = np.arange(1 << m, dtype=np.int64)
    table = parity(x[None, :] & pi[:, None]) ^ g.table[:, None]
    # row index y, column index x; flatten gives idx = x + 2**m y
    return BooleanFunction(table.reshape(-1))


def random_permutation_matrix(n: int, rng: np.random.Generator) -> Gf2Matrix:
    return permutation_matrix(rng.permutation(n))


def _format_perm(O: Gf2Matrix) -> str | None:
    a = O.array
    if np.all(a.sum(axis=0) == 1) and np.all(a.sum(axis=1) == 1):
        return "perm:" + ",".join(str(int(j)) for j in np.argmax(a, axis=1))
    return None


def _y_names(m: int) -> dict[int, str]:
    return {i: f"y{i}" for i in range(1, m + 1)}


@dataclass(frozen=True, eq=False)
class ConstructionRecipe:
    """Everything needed to rebuild a constructed function."""

    m: int
    M: Gf2Matrix
    g: BooleanFunction
    O: Gf2Matrix
    alpha: np.ndarray = field(default=None)
    beta: np.ndarray = field(default=None)
    zeta: int = 0

    def __post_init__(self):
        n = 2 * self.m
        zero = np.zeros(n, dtype=np.uint8)
        object.__setattr__(self, "alpha", as_vector(zero if self.alpha is None else self.alpha))
        object.__setattr__(self, "beta", as_vector(zero if self.beta is None else self.beta))

    @property
    def n(self) -> int:
        return 2 * self.m

    def validate(self) -> None:
        """Raise :class:`InvalidRecipeError` naming the first failed invariant."""
        m, n = self.m, 2 * self.m
        if m < 2:
            raise InvalidRecipeError("invariant failed: m >= 2")
        if self.M.shape != (m, m):
            raise InvalidRecipeError(f"invariant failed: M is {m}x{m}")
        if rank(self.M) != m:
            raise InvalidRecipeError("invariant failed: rank(M) = m")
        if rank(self.M ^ Gf2Matrix.identity(m)) != m:
            raise InvalidRecipeError("invariant failed: rank(M + I) = m")
        if self.g.n != m:
            raise InvalidRecipeError(f"invariant failed: g has {m} variables")
        if self.O.shape != (n, n):
            raise InvalidRecipeError(f"invariant failed: O is {n}x{n}")
        if not is_orthogonal(self.O):
            raise InvalidRecipeError("invariant failed: O O^T = I")
        if self.alpha.size != n:
            raise InvalidRecipeError(f"invariant failed: alpha has length {n}")
        if self.beta.size != n:
            raise InvalidRecipeError(f"invariant failed: beta has length {n}")
        if self.zeta not in (0, 1):
            raise InvalidRecipeError("invariant failed: zeta in {0, 1}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "M": self.M.tolist(),
            "g_anf": self.g.anf().format(_y_names(self.m)),
            "O": _format_perm(self.O) or self.O.tolist(),
            "alpha": vector_to_hex(self.alpha),
            "beta": vector_to_hex(self.beta),
            "zeta": int(self.zeta),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ConstructionRecipe":
        try:
            m = int(d["m"])
            n = 2 * m
            M = Gf2Matrix(d["M"])
            g = BooleanFunction.from_anf(
                AnfPolynomial.parse(d.get("g_anf", "0"), m, offsets={"y": 0}), m
            )
            O_spec = d.get("O", f"perm:{','.join(map(str, range(n)))}")
            if isinstance(O_spec, str):
                if not O_spec.startswith("perm:"):
                    raise ValueError(f"O must be 'perm:...' or a matrix, got {O_spec!r}")
                O = permutation_matrix([int(t) for t in O_spec[5:].split(",")])
            else:
                O = Gf2Matrix(O_spec)
            alpha = vector_from_hex(d.get("alpha", "0"), n)
            beta = vector_from_hex(d.get("beta", "0"), n)
            zeta = int(d.get("zeta", 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidRecipeError(f"malformed recipe: {exc}") from exc
        return cls(m, M, g, O, alpha, beta, zeta)


def build_bent_negabent(recipe: ConstructionRecipe) -> BooleanFunction:
    """f'(z) = f(z O A + alpha) + beta.z + zeta for the recipe's MM function f."""
    recipe.validate()
    f = mm_function(recipe.m, recipe.M, recipe.g)
    OA = recipe.O @ canonical_form(recipe.m).A
    return affine_compose(f, OA, recipe.alpha, recipe.beta, recipe.zeta)


def _random_lower_degree(m: int, d: int, rng: np.random.Generator) -> list[frozenset[int]]:
    """Random set of monomials in m variables, each of size < d."""
    mons = []
    for u in range(1 << m):
        if popcounts(m)[u] < d and rng.integers(2):
            mons.append(frozenset(i + 1 for i in range(m) if (u >> i) & 1))
    return mons


def degree_targeted_recipe(m: int, d: int, seed: int) -> ConstructionRecipe:
    """Recipe whose output has degree exactly d.

    g = y_1 ... y_d + (seeded random terms of degree < d); O is a seeded
    permutation matrix; alpha, beta, zeta are seeded.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if not 2 <= d <= m:
        raise ValueError(f"degree target must satisfy 2 <= d <= m, got d={d}, m={m}")
    rng = make_rng(seed)
    M = make_complete_linear_map(m, int(rng.integers(1 << 31)))
    top = frozenset(range(1, d + 1))
    g = BooleanFunction.from_anf(AnfPolynomial.from_terms(m, [top, *_random_lower_degree(m, d, rng)]))
    n = 2 * m
    O = random_permutation_matrix(n, rng)
    alpha = rng.integers(0, 2, n)
    beta = rng.integers(0, 2, n)
    zeta = int(rng.integers(2))
    return ConstructionRecipe(m, M, g, O, alpha, beta, zeta)


def degree_targeted_construct(m: int, d: int, seed: int) -> BooleanFunction:
    return build_bent_negabent(degree_targeted_recipe(m, d, seed))


def example_recipe(which: int) -> ConstructionRecipe:
    """The two worked examples: m = 4 (n = 8) and m = 5 (n = 10), O = I, no affine shift."""
    if which == 1:
        M = Gf2Matrix([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
        g = BooleanFunction.from_anf(AnfPolynomial.from_terms(4, [{1, 2, 3, 4}]))
        return ConstructionRecipe(4, M, g, Gf2Matrix.identity(8))
    if which == 2:
        M = block_diag([
            Gf2Matrix([[1, 1], [1, 0]]),
            Gf2Matrix([[0, 1, 1], [1, 1, 0], [1, 0, 0]]),
        ])
        g = BooleanFunction.from_anf(AnfPolynomial.from_terms(5, [{1, 2, 3, 4, 5}, {2, 3, 4, 5}]))
        return ConstructionRecipe(5, M, g, Gf2Matrix.identity(10))
    raise ValueError(f"there are two worked examples, got {which}")


def xy_names(m: int) -> dict[int, str]:
    """Variable names x1..xm, y1..ym for displaying a 2m-variable ANF."""
    names = {i: f"x{i}" for i in range(1, m + 1)}
    names.update({m + i: f"y{i}" for i in range(1, m + 1)})
    return names


def expected_degree(recipe: ConstructionRecipe) -> int:
    return max(2, degree(recipe.g))

