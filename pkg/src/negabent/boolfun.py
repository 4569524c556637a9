"""Boolean functions on F_2^n stored as truth tables.

Index convention, used everywhere in the package: the input
``x = (x_1, ..., x_n)`` sits at table index ``sum(x_i << (i - 1))``, so x_1 is
the least significant bit. The hex form of a table is the integer
``sum(table[i] << i)`` written with ``ceil(2**n / 4)`` hex digits; hex digit j
counted from the right holds indices 4j..4j+3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import DimensionError
from .gf2 import Gf2Matrix, as_vector, vector_to_int

__all__ = [
    "MAX_VARS",
    "BooleanFunction",
    "AnfPolynomial",
    "anf_from_table",
    "table_from_anf",
    "degree",
    "weight",
    "sigma_d",
    "affine_compose",
    "popcounts",
    "parity",
    "input_bits",
]

MAX_VARS = 24


@lru_cache(maxsize=None)
def popcounts(n: int) -> np.ndarray:
    """Hamming weight of every index ``0 .. 2**n - 1`` (read-only)."""
    w = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        w = np.concatenate([w, w + 1])
    w.flags.writeable = False
    return w


def parity(values: np.ndarray) -> np.ndarray:
    """Parity of the popcount of each (non-negative, < 2**32) integer."""
    v = np.asarray(values, dtype=np.uint64).copy()
    for shift in (16, 8, 4, 2, 1):
        v ^= v >> np.uint64(shift)
    return (v & np.uint64(1)).astype(np.uint8)


def input_bits(n: int) -> np.ndarray:
    """``(2**n, n)`` array whose row idx holds the coordinates of input idx."""
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def _linear_images(rows: Iterable[int], n: int) -> np.ndarray:
    # out[idx(x)] = XOR of rows[i] over the set bits x_i; built by doubling.
    out = np.zeros(1, dtype=np.int64)
    for r in rows:
        out = np.concatenate([out, out ^ r])
    assert out.size == 1 << n
    return out


class BooleanFunction:
    """A function F_2^n -> F_2 given by its truth table."""

    __slots__ = ("n", "_t")

    def __init__(self, table: Iterable[int] | np.ndarray, n: int | None = None):
        t = np.asarray(table)
        if t.dtype != np.uint8 or t.flags.writeable:
            if t.dtype == np.uint8:
                t = t.copy()
            else:
                t = np.array(t, dtype=np.int64)
                if t.size and t.min() < 0:
                    raise ValueError("truth table entries must be 0 or 1")
            if t.ndim != 1:
                raise DimensionError("truth table must be 1-D")
            if t.size and t.max() > 1:
                raise ValueError("truth table entries must be 0 or 1")
            t = t.astype(np.uint8, copy=False)
            t.flags.writeable = False
        size = t.size
        k = size.bit_length() - 1
        if size == 0 or size != 1 << k:
            raise DimensionError(f"truth table length {size} is not a power of two")
        if n is not None and n != k:
            raise DimensionError(f"table of length {size} does not describe {n} variables")
        if k < 1 or k > MAX_VARS:
            raise DimensionError(f"n must satisfy 1 <= n <= {MAX_VARS}, got {k}")
        self.n = k
        self._t = t

    # construction helpers -------------------------------------------------

    @classmethod
    def zeros(cls, n: int) -> "BooleanFunction":
        return cls(np.zeros(1 << n, dtype=np.uint8))

    @classmethod
    def ones(cls, n: int) -> "BooleanFunction":
        return cls(np.ones(1 << n, dtype=np.uint8))

    @classmethod
    def variable(cls, n: int, i: int) -> "BooleanFunction":
        """The coordinate function x_i (1-based)."""
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range 1..{n}")
        return cls((np.arange(1 << n) >> (i - 1)) & 1)

    @classmethod
    def linear(cls, u: np.ndarray | Iterable[int], n: int | None = None) -> "BooleanFunction":
        """x -> u.x"""
        u = as_vector(u, n)
        return cls(parity(np.arange(1 << u.size) & vector_to_int(u)))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "BooleanFunction":
        return cls(rng.integers(0, 2, 1 << n, dtype=np.uint8))

    @classmethod
    def from_hex(cls, text: str, n: int | None = None) -> "BooleanFunction":
        text = text.strip().lower()
        if text.startswith("0x"):
            text = text[2:]
        if not text or re.fullmatch(r"[0-9a-f]+", text) is None:
            raise ValueError(f"malformed truth-table hex: {text!r}")
        if n is None:
            # infer from digit count: ceil(2**n / 4) digits
            n = max(1, (4 * len(text)).bit_length() - 1)
            if n > 2 and (1 << n) != 4 * len(text):
                raise ValueError(f"hex length {len(text)} does not match any n; pass n explicitly")
        if n < 1 or n > MAX_VARS:
            raise DimensionError(f"n must satisfy 1 <= n <= {MAX_VARS}")
        value = int(text, 16)
        if value >> (1 << n):
            raise ValueError(f"hex value has bits beyond 2**{n} table entries")
        raw = value.to_bytes(-(-(1 << n) // 8), "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return cls(bits[: 1 << n])

    @classmethod
    def from_anf(cls, p: "AnfPolynomial | str", n: int | None = None) -> "BooleanFunction":
        if isinstance(p, str):
            p = AnfPolynomial.parse(p, n)
        return table_from_anf(p)

    # views ----------------------------------------------------------------

    @property
    def table(self) -> np.ndarray:
        """Read-only ``uint8`` truth table."""
        return self._t

    @property
    def size(self) -> int:
        return self._t.size

    def signs(self) -> np.ndarray:
        """(-1)**f(x) as an int64 array."""
        return 1 - 2 * self._t.astype(np.int64)

    def to_hex(self) -> str:
        packed = np.packbits(self._t, bitorder="little").tobytes()
        value = int.from_bytes(packed, "little")
        return format(value, f"0{max(1, (1 << self.n) // 4)}x")

    def anf(self) -> "AnfPolynomial":
        return anf_from_table(self)

    @property
    def degree(self) -> int:
        return degree(self)

    @property
    def weight(self) -> int:
        return weight(self)

    def __call__(self, x: int | Iterable[int] | np.ndarray) -> int:
        idx = x if isinstance(x, (int, np.integer)) else vector_to_int(as_vector(x, self.n))
        return int(self._t[idx])

    # algebra --------------------------------------------------------------

    def __xor__(self, other: "BooleanFunction | int") -> "BooleanFunction":
        if isinstance(other, BooleanFunction):
            if other.n != self.n:
                raise DimensionError(f"cannot add functions on {self.n} and {other.n} variables")
            return BooleanFunction(self._t ^ other._t)
        if other in (0, 1):
            return BooleanFunction(self._t ^ np.uint8(other))
        return NotImplemented

    __rxor__ = __xor__
    __add__ = __xor__
    __radd__ = __xor__

    def __and__(self, other: "BooleanFunction") -> "BooleanFunction":
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        if other.n != self.n:
            raise DimensionError(f"cannot multiply functions on {self.n} and {other.n} variables")
        return BooleanFunction(self._t & other._t)

    __mul__ = __and__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._t, other._t))

    def __hash__(self) -> int:
        return hash((self.n, self._t.tobytes()))

    def __repr__(self) -> str:
        if self.n <= 6:
            return f"BooleanFunction(n={self.n}, tt={self.to_hex()})"
        return f"BooleanFunction(n={self.n}, weight={self.weight})"


_TERM = re.compile(r"([a-z])(\d+)")


@dataclass(frozen=True)
class AnfPolynomial:
    """Sparse algebraic normal form: a set of monomials over F_2.

    Each monomial is a frozenset of 1-based variable indices; the empty set is
    the constant 1. The zero polynomial has no monomials.
    """

    n: int
    monomials: frozenset[frozenset[int]]

    def __post_init__(self):
        mons = frozenset(frozenset(int(i) for i in m) for m in self.monomials)
        for m in mons:
            if any(not 1 <= i <= self.n for i in m):
                raise ValueError(f"monomial {sorted(m)} uses a variable outside 1..{self.n}")
        object.__setattr__(self, "monomials", mons)

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[Iterable[int]]) -> "AnfPolynomial":
        """Build from terms, cancelling repeated monomials in pairs."""
        acc: set[frozenset[int]] = set()
        for t in terms:
            acc ^= {frozenset(t)}
        return cls(n, frozenset(acc))

    @classmethod
    def parse(cls, text: str, n: int | None = None, offsets: dict[str, int] | None = None) -> "AnfPolynomial":
        """Parse e.g. ``"x1x2 + x3 + 1"``.

        ``offsets`` maps variable letters to index offsets, so with
        ``{"x": 0, "y": 4}`` the name y2 denotes variable 6. By default only
        the letter ``x`` is accepted. Repeated terms cancel. If ``n`` is
        omitted it is the highest variable index that appears.
        """
        offsets = {"x": 0} if offsets is None else offsets
        body = re.sub(r"\s+", "", text).replace("⊕", "+")
        if body in ("", "0"):
            return cls(n or 1, frozenset())
        terms = []
        for raw in body.split("+"):
            if raw == "1":
                terms.append(frozenset())
                continue
            if not raw or _TERM.sub("", raw):
                raise ValueError(f"malformed ANF term {raw!r}")
            mon = set()
            for letter, num in _TERM.findall(raw):
                if letter not in offsets:
                    raise ValueError(f"unknown variable name {letter}{num}")
                if int(num) < 1:
                    raise ValueError(f"variable indices start at 1: {letter}{num}")
                mon.add(offsets[letter] + int(num))
            terms.append(frozenset(mon))
        top = max((max(m) for m in terms if m), default=1)
        if n is None:
            n = top
        elif top > n:
            raise ValueError(f"ANF uses variable {top} but n={n}")
        return cls.from_terms(n, terms)

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)

    def sorted_terms(self) -> list[tuple[int, ...]]:
        return sorted((tuple(sorted(m)) for m in self.monomials), key=lambda t: (-len(t), t))

    def format(self, names: dict[int, str] | None = None) -> str:
        """Render as ``"x1x2+x3+1"``; ``names`` optionally renames variables."""
        if not self.monomials:
            return "0"
        parts = []
        for t in self.sorted_terms():
            if not t:
                parts.append("1")
            else:
                parts.append("".join(names[i] if names else f"x{i}" for i in t))
        return "+".join(parts)

    def __str__(self) -> str:
        return self.format()


def _moebius(t: np.ndarray, n: int) -> np.ndarray:
    a = np.array(t, dtype=np.uint8)
    for i in range(n):
        v = a.reshape(-1, 2, 1 << i)
        v[:, 1, :] ^= v[:, 0, :]
    return a


def anf_from_table(f: BooleanFunction) -> AnfPolynomial:
    coeffs = _moebius(f.table, f.n)
    mons = []
    for u in np.flatnonzero(coeffs):
        mons.append(frozenset(i + 1 for i in range(f.n) if (int(u) >> i) & 1))
    return AnfPolynomial(f.n, frozenset(mons))


def table_from_anf(p: AnfPolynomial) -> BooleanFunction:
    coeffs = np.zeros(1 << p.n, dtype=np.uint8)
    for m in p.monomials:
        coeffs[sum(1 << (i - 1) for i in m)] = 1
    return BooleanFunction(_moebius(coeffs, p.n))


def degree(f: BooleanFunction) -> int:
    coeffs = _moebius(f.table, f.n)
    support = np.flatnonzero(coeffs)
    if support.size == 0:
        return 0
    return int(popcounts(f.n)[support].max())


def weight(f: BooleanFunction) -> int:
    return int(np.count_nonzero(f.table))


def sigma_d(n: int, d: int) -> BooleanFunction:
    """Elementary symmetric function of degree d: 1 iff C(wt(x), d) is odd."""
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    w = popcounts(n)
    # Lucas: C(w, d) is odd iff the binary digits of d are a subset of those of w
    return BooleanFunction(((w & d) == d).astype(np.uint8))


def affine_compose(
    f: BooleanFunction,
    C: Gf2Matrix,
    a: np.ndarray | Iterable[int] | None = None,
    beta: np.ndarray | Iterable[int] | None = None,
    zeta: int = 0,
) -> BooleanFunction:
    """Return ``x -> f(x C + a) + beta.x + zeta``."""
    n = f.n
    if C.shape != (n, n):
        raise DimensionError(f"matrix must be {n}x{n}, got {C.shape}")
    a_int = 0 if a is None else vector_to_int(as_vector(a, n))
    b_int = 0 if beta is None else vector_to_int(as_vector(beta, n))
    if zeta not in (0, 1):
        raise ValueError("zeta must be 0 or 1")
    image = _linear_images(C.row_ints(), n) ^ a_int
    out = f.table[image]
    if b_int:
        out = out ^ parity(np.arange(1 << n, dtype=np.int64) & b_int)
    if zeta:
        out = out ^ np.uint8(1)
    return BooleanFunction(out)
