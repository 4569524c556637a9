"""Exact Walsh-Hadamard and nega-Hadamard spectra.

All spectra are unnormalized integers:

    walsh(u) = sum_x (-1)**(f(x) + u.x)
    nega(u)  = sum_x (-1)**(f(x) + u.x) * i**wt(x)

The conventional 2**(-n/2) scale factor is irrational for odd n and is only
ever applied when values are displayed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .boolfun import BooleanFunction, parity, popcounts, sigma_d
from .errors import DimensionError, InternalInvariantError
from .gf2 import as_vector, vector_to_int

__all__ = [
    "GaussianInt",
    "WalshSpectrum",
    "NegaSpectrum",
    "fwht",
    "walsh_transform",
    "walsh_transform_naive",
    "nega_transform_direct",
    "nega_transform_fast",
    "nega_from_walsh",
    "walsh_batch",
    "walsh_naive_batch",
    "nega_fast_batch",
    "nega_direct_batch",
    "autocorrelation",
    "nega_autocorrelation",
    "spectrum_histogram",
    "format_value",
]


class GaussianInt(NamedTuple):
    re: int
    im: int

    @property
    def norm(self) -> int:
        """|z|**2, exact."""
        return self.re * self.re + self.im * self.im

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __str__(self) -> str:
        return format_value(self)


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    values: np.ndarray

    def __getitem__(self, u: int) -> int:
        return int(self.values[u])

    def __len__(self) -> int:
        return self.values.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.values, other.values))

    def energy(self) -> int:
        return int(np.sum(self.values * self.values))

    def tolist(self) -> list[int]:
        return self.values.tolist()


@dataclass(frozen=True, eq=False)
class NegaSpectrum:
    n: int
    re: np.ndarray
    im: np.ndarray

    def __getitem__(self, u: int) -> GaussianInt:
        return GaussianInt(int(self.re[u]), int(self.im[u]))

    def __len__(self) -> int:
        return self.re.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NegaSpectrum):
            return NotImplemented
        return (
            self.n == other.n
            and bool(np.array_equal(self.re, other.re))
            and bool(np.array_equal(self.im, other.im))
        )

    @property
    def values(self) -> list[GaussianInt]:
        return [GaussianInt(int(a), int(b)) for a, b in zip(self.re, self.im)]

    def norms(self) -> np.ndarray:
        return self.re * self.re + self.im * self.im

    def energy(self) -> int:
        return int(np.sum(self.norms()))

    def tolist(self) -> list[list[int]]:
        return np.stack([self.re, self.im], axis=1).tolist()


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def fwht(a: np.ndarray) -> np.ndarray:
    """In-place-style butterfly along the last axis; returns a new int64 array.

    Works on a single ±1 vector or on a batch of shape ``(..., 2**n)``.
    """
    out = np.array(a, dtype=np.int64)
    size = out.shape[-1]
    lead = out.shape[:-1]
    h = 1
    while h < size:
        v = out.reshape(*lead, -1, 2, h)
        x = v[..., 0, :].copy()
        v[..., 0, :] += v[..., 1, :]
        v[..., 1, :] = x - v[..., 1, :]
        h <<= 1
    return out


def walsh_transform(f: BooleanFunction) -> WalshSpectrum:
    return WalshSpectrum(f.n, _freeze(fwht(f.signs())))


# Above this size the ±1 character matrix is built per row block instead of cached.
_CACHE_LIMIT = 12


@lru_cache(maxsize=2)
def _characters(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return _freeze(1 - 2 * parity(idx[:, None] & idx[None, :]).astype(np.float32))


def _character_sum(weights: np.ndarray, n: int) -> np.ndarray:
    """sum_x weights[..., x] * (-1)**(u.x) for every u, by explicit double sum.

    Every term is in {-1, 0, 1} and every partial sum is an integer of size at
    most 2**n <= 2**24, so float32 (n <= 12) and float64 products are exact.
    """
    if n <= _CACHE_LIMIT:
        out = np.asarray(weights, dtype=np.float32) @ _characters(n)
    else:
        w = np.asarray(weights, dtype=np.float64)
        idx = np.arange(1 << n, dtype=np.int64)
        out = np.empty(w.shape, dtype=np.float64)
        step = 1 << 10
        for start in range(0, 1 << n, step):
            block = 1.0 - 2.0 * parity(idx[:, None] & idx[None, start:start + step])
            out[..., start:start + step] = w @ block
    return np.rint(out).astype(np.int64)


def _signs(tables: np.ndarray) -> np.ndarray:
    return 1 - 2 * np.asarray(tables, dtype=np.int64)


def walsh_batch(tables: np.ndarray) -> np.ndarray:
    """Butterfly Walsh spectra of a ``(k, 2**n)`` stack of truth tables."""
    return fwht(_signs(tables))


def walsh_naive_batch(tables: np.ndarray) -> np.ndarray:
    n = np.shape(tables)[-1].bit_length() - 1
    return _character_sum(_signs(tables), n)


def nega_fast_batch(tables: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(re, im) nega spectra of a stack of truth tables, via f + sigma_2."""
    n = np.shape(tables)[-1].bit_length() - 1
    return nega_from_walsh(fwht(_signs(np.asarray(tables) ^ _sigma2_table(n))))


def nega_direct_batch(tables: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = np.shape(tables)[-1].bit_length() - 1
    s = _signs(tables)
    k = popcounts(n) & 3
    return _character_sum(s * _I_POW_RE[k], n), _character_sum(s * _I_POW_IM[k], n)


def walsh_transform_naive(f: BooleanFunction) -> WalshSpectrum:
    """O(4**n) direct evaluation; independent of the butterfly."""
    return WalshSpectrum(f.n, _freeze(_character_sum(f.signs(), f.n)))


# i**k for k = 0..3 as (re, im)
_I_POW_RE = np.array([1, 0, -1, 0], dtype=np.int64)
_I_POW_IM = np.array([0, 1, 0, -1], dtype=np.int64)


def nega_transform_direct(f: BooleanFunction) -> NegaSpectrum:
    """Literal double sum over Gaussian integers, O(4**n)."""
    s = f.signs()
    k = popcounts(f.n) & 3
    re = _character_sum(s * _I_POW_RE[k], f.n)
    im = _character_sum(s * _I_POW_IM[k], f.n)
    return NegaSpectrum(f.n, _freeze(re), _freeze(im))


def nega_from_walsh(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Combine a Walsh spectrum of f + sigma_2 into the nega spectrum of f.

    ``w`` may be batched along leading axes. The complement index u + 1_n is
    the reversal of the last axis.
    """
    w = np.asarray(w, dtype=np.int64)
    wbar = w[..., ::-1]
    s = w + wbar
    d = w - wbar
    if np.any(s & 1):
        raise InternalInvariantError("Walsh values at u and its complement differ in parity")
    return s >> 1, d >> 1


@lru_cache(maxsize=None)
def _sigma2_table(n: int) -> np.ndarray:
    if n == 1:
        return _freeze(np.zeros(2, dtype=np.uint8))
    return sigma_d(n, 2).table


def nega_transform_fast(f: BooleanFunction) -> NegaSpectrum:
    """Nega spectrum from one Walsh transform of f + sigma_2, O(n 2**n)."""
    shifted = 1 - 2 * (f.table ^ _sigma2_table(f.n)).astype(np.int64)
    re, im = nega_from_walsh(fwht(shifted))
    return NegaSpectrum(f.n, _freeze(re), _freeze(im))


def _shift_index(f: BooleanFunction, u) -> int:
    if isinstance(u, (int, np.integer)):
        if not 0 <= u < f.size:
            raise DimensionError(f"shift {u} out of range for n={f.n}")
        return int(u)
    v = as_vector(u)
    if v.size != f.n:
        raise DimensionError(f"shift has length {v.size}, function has {f.n} variables")
    return vector_to_int(v)


def autocorrelation(f: BooleanFunction, u) -> int:
    """C_f(u) = sum_x (-1)**(f(x) + f(x + u))."""
    k = _shift_index(f, u)
    s = f.signs()
    idx = np.arange(f.size)
    return int(np.dot(s, s[idx ^ k]))


def nega_autocorrelation(f: BooleanFunction, u) -> int:
    """c_f(u) = sum_x (-1)**(f(x) + f(x + u) + u.x)."""
    k = _shift_index(f, u)
    s = f.signs()
    idx = np.arange(f.size)
    chi = 1 - 2 * parity(idx & k).astype(np.int64)
    return int(np.dot(s * s[idx ^ k], chi))


def spectrum_histogram(s: WalshSpectrum | NegaSpectrum) -> dict:
    """Exact value tally. Keys are ints (Walsh) or :class:`GaussianInt` (nega)."""
    if isinstance(s, WalshSpectrum):
        return dict(Counter(int(v) for v in s.values))
    pairs = Counter(zip(s.re.tolist(), s.im.tolist()))
    return {GaussianInt(a, b): c for (a, b), c in pairs.items()}


def format_value(z: int | GaussianInt) -> str:
    """Compact text for a spectrum value: ``4``, ``-2i``, ``2-2i``."""
    if isinstance(z, (int, np.integer)):
        return str(int(z))
    re, im = z
    if im == 0:
        return str(re)
    imag = {1: "i", -1: "-i"}.get(im, f"{im}i")
    if re == 0:
        return imag
    return f"{re}{'+' if im > 0 else ''}{imag}"
