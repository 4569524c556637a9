"""Bent, semibent and negabent predicates and the structure results around them."""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

import numpy as np

from .boolfun import BooleanFunction, affine_compose, degree, popcounts, sigma_d
from .errors import NotBentError, NotNegabentError, UnsupportedCaseError
from .gf2 import lambda_matrix
from .spectra import (
    GaussianInt,
    NegaSpectrum,
    format_value,
    nega_transform_fast,
    spectrum_histogram,
    walsh_transform,
)

__all__ = [
    "ClassificationReport",
    "OddDecomposition",
    "sigma2",
    "is_bent",
    "is_semibent",
    "is_negabent",
    "is_negabent_by_autocorrelation",
    "is_bent_negabent",
    "semibent_with_complement_asymmetry",
    "dual",
    "odd_decompose",
    "extend_odd",
    "nega_distribution_alternatives",
    "check_distribution",
    "negabent_degree_bound_check",
    "dual_degree_inequality",
    "classify",
]


def sigma2(n: int) -> BooleanFunction:
    """sigma_2 on n variables; the zero function when n = 1."""
    return BooleanFunction.zeros(1) if n == 1 else sigma_d(n, 2)


def is_bent(f: BooleanFunction) -> bool:
    if f.n % 2:
        return False
    w = walsh_transform(f).values
    return bool(np.all(np.abs(w) == 1 << (f.n // 2)))


def is_semibent(f: BooleanFunction) -> bool:
    """Walsh values all in {0, ±2**((n+1)/2)}; defined for odd n only."""
    if f.n % 2 == 0:
        raise UnsupportedCaseError("semibent is only defined here for an odd number of variables")
    a = np.abs(walsh_transform(f).values)
    return bool(np.all((a == 0) | (a == 1 << ((f.n + 1) // 2))))


def is_negabent(f: BooleanFunction) -> bool:
    return bool(np.all(nega_transform_fast(f).norms() == 1 << f.n))


def is_negabent_by_autocorrelation(f: BooleanFunction) -> bool:
    """Negabent test via c_f(u) = 0 for all u != 0, stopping at the first nonzero value.

    Independent of both transforms; costs O(4**n) when f is negabent.
    """
    s = f.signs()
    idx = np.arange(f.size, dtype=np.int64)
    for u in range(1, f.size):
        chi = 1 - 2 * ((popcounts(f.n)[idx & u]) & 1)
        if np.dot(s * s[idx ^ u], chi) != 0:
            return False
    return True


def is_bent_negabent(f: BooleanFunction) -> bool:
    return is_bent(f) and is_negabent(f)


def semibent_with_complement_asymmetry(f: BooleanFunction) -> bool:
    """For odd n: f + sigma_2 is semibent and |W(u)| != |W(u + 1_n)| for all u."""
    g = f ^ sigma2(f.n)
    if not is_semibent(g):
        return False
    a = np.abs(walsh_transform(g).values)
    return bool(np.all(a != a[::-1]))


def dual(f: BooleanFunction) -> BooleanFunction:
    """Dual of a bent function: 0 where the Walsh value is positive."""
    if not is_bent(f):
        raise NotBentError("the dual is only defined for bent functions")
    return BooleanFunction((walsh_transform(f).values < 0).astype(np.uint8))


@dataclass(frozen=True)
class OddDecomposition:
    """Halves of (f + sigma_2)(x Λ) on the hyperplanes x_n = 0 and x_n = 1."""

    g: BooleanFunction
    h: BooleanFunction

    @property
    def both_bent(self) -> bool:
        return is_bent(self.g) and is_bent(self.h)

    def recombine(self) -> BooleanFunction:
        """(1 + x_n) g + x_n h on n variables."""
        return BooleanFunction(np.concatenate([self.g.table, self.h.table]))

    def reassemble(self) -> BooleanFunction:
        """Undo the Λ substitution; equals f + sigma_2 of the decomposed f."""
        joined = self.recombine()
        return affine_compose(joined, lambda_matrix(joined.n))


def odd_decompose(f: BooleanFunction) -> OddDecomposition:
    if f.n % 2 == 0:
        raise UnsupportedCaseError("odd decomposition needs an odd number of variables")
    if f.n < 3:
        raise UnsupportedCaseError("odd decomposition needs n >= 3")
    f2 = affine_compose(f ^ sigma2(f.n), lambda_matrix(f.n))
    half = f.size // 2
    return OddDecomposition(BooleanFunction(f2.table[:half]), BooleanFunction(f2.table[half:]))


def extend_odd(f: BooleanFunction) -> BooleanFunction:
    """f(x) + sigma_2(x) + sigma_1(x) y on n + 1 variables, y being the last."""
    if f.n % 2 == 0:
        raise UnsupportedCaseError("extension is defined for an odd number of variables")
    base = (f ^ sigma2(f.n)).table
    s1 = (popcounts(f.n) & 1).astype(np.uint8)
    return BooleanFunction(np.concatenate([base, base ^ s1]))


def nega_distribution_alternatives(n: int) -> list[dict[GaussianInt, int]]:
    """The two admissible nega-spectrum histograms of a negabent function.

    Keys are unnormalized values: ±2**(n/2), ±i 2**(n/2) for even n and
    2**((n-1)/2)(±1 ± i) for odd n.
    """
    if n % 2 == 0:
        s = 1 << (n // 2)
        base = 1 << (n - 2)
        d = 1 << (n // 2 - 1)
        alts = []
        for sign in (1, -1):
            alts.append({
                GaussianInt(s, 0): base + sign * d,
                GaussianInt(-s, 0): base - sign * d,
                GaussianInt(0, s): base,
                GaussianInt(0, -s): base,
            })
        return alts
    s = 1 << ((n - 1) // 2)
    # 2**(n-2) +/- 2**((n-1)/2 - 1), kept as halves so n = 1 stays integral
    twice_base = 1 << (n - 1)
    twice_d = 1 << ((n - 1) // 2)
    alts = []
    for sign in (1, -1):
        plus = (twice_base + sign * twice_d) // 2
        minus = (twice_base - sign * twice_d) // 2
        alts.append({
            GaussianInt(s, s): plus,
            GaussianInt(s, -s): plus,
            GaussianInt(-s, s): minus,
            GaussianInt(-s, -s): minus,
        })
    return alts


def _without_zeros(h: dict) -> dict:
    return {k: v for k, v in h.items() if v}


def check_distribution(f: BooleanFunction, spectrum: NegaSpectrum | None = None) -> bool:
    """True iff the nega histogram of a negabent f is one of the two admissible ones."""
    spec = nega_transform_fast(f) if spectrum is None else spectrum
    if not np.all(spec.norms() == 1 << f.n):
        raise NotNegabentError("distribution law applies to negabent functions only")
    hist = spectrum_histogram(spec)
    return any(hist == _without_zeros(alt) for alt in nega_distribution_alternatives(f.n))


def negabent_degree_bound_check(f: BooleanFunction) -> bool:
    if not is_negabent(f):
        raise NotNegabentError("degree bound applies to negabent functions only")
    return degree(f) <= ceil(f.n / 2)


def dual_degree_inequality(n: int, deg_f: int, deg_dual: int) -> bool:
    """n/2 - deg(f) >= (n/2 - deg(dual)) / (deg(dual) - 1), for deg(dual) >= 2.

    Evaluated with integers: (n - 2 deg f)(deg dual - 1) >= n - 2 deg dual.
    """
    if deg_dual < 2:
        raise ValueError("the inequality needs deg(dual) >= 2")
    return (n - 2 * deg_f) * (deg_dual - 1) >= n - 2 * deg_dual


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    is_bent: bool
    is_semibent: bool | None
    is_negabent: bool
    is_bent_negabent: bool
    degree: int
    walsh_hist: dict[int, int]
    nega_hist: dict[GaussianInt, int]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "is_bent": self.is_bent,
            "is_semibent": self.is_semibent,
            "is_negabent": self.is_negabent,
            "is_bent_negabent": self.is_bent_negabent,
            "scale": f"2^(-{self.n}/2)",
            "walsh_hist": {format_value(k): v for k, v in sorted(self.walsh_hist.items())},
            "nega_hist": {format_value(k): v for k, v in sorted(self.nega_hist.items())},
        }


def classify(f: BooleanFunction) -> ClassificationReport:
    w = walsh_transform(f)
    nega = nega_transform_fast(f)
    flat = 1 << (f.n // 2)
    bent = f.n % 2 == 0 and bool(np.all(np.abs(w.values) == flat))
    semibent = None if f.n % 2 == 0 else is_semibent(f)
    negabent = bool(np.all(nega.norms() == 1 << f.n))
    return ClassificationReport(
        n=f.n,
        is_bent=bent,
        is_semibent=semibent,
        is_negabent=negabent,
        is_bent_negabent=bent and negabent,
        degree=degree(f),
        walsh_hist=spectrum_histogram(w),
        nega_hist=spectrum_histogram(nega),
    )
