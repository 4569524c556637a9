"""Verification campaigns: exhaustive and seeded random sweeps over claims.

Each claim id names one checkable statement. A campaign runs the claim over a
population (all functions, negabent functions, constructed functions or input
points), counts what it tested and records every counterexample as hex.
Counterexample truth tables are shrunk by greedy bit clearing before they are
reported.

Campaigns are deterministic given ``(claim, n or m, mode, samples, seed)``.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import ceil
from typing import Callable, Iterable, Iterator

import numpy as np

from . import classify as cl
from .boolfun import BooleanFunction, affine_compose, degree, popcounts, sigma_d
from .construct import canonical_form, degree_targeted_recipe, build_bent_negabent, make_rng
from .errors import CampaignError
from .gf2 import Gf2Matrix, rank
from .spectra import (
    nega_direct_batch,
    nega_fast_batch,
    nega_transform_fast,
    spectrum_histogram,
    walsh_batch,
    walsh_naive_batch,
)

__all__ = [
    "CLAIMS",
    "CampaignSpec",
    "CampaignResult",
    "run_campaign",
    "enumerate_negabent",
    "all_functions",
    "random_functions",
    "random_bent",
    "random_negabent",
    "shrink_counterexample",
]

EXHAUSTIVE_FUNCTION_LIMIT = 4
EXHAUSTIVE_POINT_LIMIT = 16


# -- populations ----------------------------------------------------------


def _all_tables(n: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    size = 1 << n
    stop = (1 << size) if stop is None else stop
    codes = np.arange(start, stop, dtype=np.int64)
    tables = ((codes[:, None] >> np.arange(size)) & 1).astype(np.uint8)
    tables.flags.writeable = False
    return tables


def all_functions(n: int, start: int = 0, stop: int | None = None) -> Iterator[BooleanFunction]:
    """Every function on n <= 4 variables, in order of the integer encoding of its table."""
    if n > EXHAUSTIVE_FUNCTION_LIMIT:
        raise CampaignError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_FUNCTION_LIMIT}")
    for row in _all_tables(n, start, stop):
        yield BooleanFunction(row)


def random_functions(n: int, count: int, rng: np.random.Generator) -> Iterator[BooleanFunction]:
    for _ in range(count):
        yield BooleanFunction.random(n, rng)


def _random_invertible(n: int, rng: np.random.Generator) -> Gf2Matrix:
    while True:
        C = Gf2Matrix(rng.integers(0, 2, (n, n)))
        if rank(C) == n:
            return C


def random_bent(n: int, rng: np.random.Generator) -> BooleanFunction:
    """Random Maiorana-McFarland bent function under a random affine change of variables."""
    if n % 2 or n < 2:
        raise ValueError("bent functions need an even n >= 2")
    m = n // 2
    pi = rng.permutation(1 << m)
    g = rng.integers(0, 2, 1 << m, dtype=np.uint8)
    x = np.arange(1 << m, dtype=np.int64)
    table = (popcounts(m)[x[None, :] & pi[:, None]] & 1).astype(np.uint8) ^ g[:, None]
    f = BooleanFunction(table.reshape(-1))
    return affine_compose(
        f, _random_invertible(n, rng), rng.integers(0, 2, n), rng.integers(0, 2, n), int(rng.integers(2))
    )


def random_negabent(n: int, rng: np.random.Generator) -> BooleanFunction:
    """Random negabent function, generated through the bent characterizations.

    Even n: (random bent) + sigma_2. Odd n >= 3: two random bent halves on
    n - 1 variables, joined and pulled back through Λ, plus sigma_2.
    """
    if n == 1:
        return BooleanFunction(rng.integers(0, 2, 2, dtype=np.uint8))
    if n % 2 == 0:
        return random_bent(n, rng) ^ cl.sigma2(n)
    joined = cl.OddDecomposition(random_bent(n - 1, rng), random_bent(n - 1, rng))
    return joined.reassemble() ^ cl.sigma2(n)


def enumerate_negabent(n: int) -> list[BooleanFunction]:
    """All negabent functions on n <= 4 variables.

    Even n lists g + sigma_2 over every bent g; odd n filters all functions
    with the spectral test.
    """
    if n > EXHAUSTIVE_FUNCTION_LIMIT:
        raise CampaignError(f"full enumeration is limited to n <= {EXHAUSTIVE_FUNCTION_LIMIT}")
    if n % 2 == 0:
        s2 = cl.sigma2(n)
        return [g ^ s2 for g in all_functions(n) if cl.is_bent(g)]
    return [f for f in all_functions(n) if cl.is_negabent(f)]


def shrink_counterexample(
    f: BooleanFunction, violates: Callable[[BooleanFunction], bool]
) -> BooleanFunction:
    """Clear table bits one at a time while the violation persists."""
    t = np.array(f.table)
    for i in np.flatnonzero(t):
        t[i] = 0
        if not violates(BooleanFunction(t)):
            t[i] = 1
    return BooleanFunction(t)


# -- per-function checks ---------------------------------------------------
# Each returns True when the claim holds for f. Module level so that worker
# processes can import them.


def _check_thm_even(f: BooleanFunction) -> bool:
    return cl.is_negabent(f) == cl.is_bent(f ^ cl.sigma2(f.n))


def _check_thm_odd(f: BooleanFunction) -> bool:
    dec = cl.odd_decompose(f)
    conditions = {
        cl.is_negabent(f),
        cl.semibent_with_complement_asymmetry(f),
        dec.both_bent,
        cl.is_bent(cl.extend_odd(f)),
    }
    return len(conditions) == 1 and dec.reassemble() == f ^ cl.sigma2(f.n)


def _spectrum_support(n: int) -> set[tuple[int, int]]:
    if n % 2 == 0:
        s = 1 << (n // 2)
        return {(s, 0), (-s, 0), (0, s), (0, -s)}
    s = 1 << ((n - 1) // 2)
    return {(a, b) for a in (s, -s) for b in (s, -s)}


def _check_spectrum_values(f: BooleanFunction) -> bool:
    if not cl.is_negabent(f):
        return False
    return set(spectrum_histogram(nega_transform_fast(f))) <= _spectrum_support(f.n)


def _check_distribution(f: BooleanFunction) -> bool:
    return cl.is_negabent(f) and cl.check_distribution(f)


def _check_sigma2_closure(f: BooleanFunction) -> bool:
    return cl.is_bent_negabent(f) and cl.is_bent_negabent(f ^ cl.sigma2(f.n))


def _check_degree_bound(f: BooleanFunction) -> bool:
    return cl.is_negabent(f) and degree(f) <= ceil(f.n / 2)


def _check_nac(f: BooleanFunction) -> bool:
    return cl.is_negabent(f) == cl.is_negabent_by_autocorrelation(f)


# -- claim registry ------------------------------------------------------------


@dataclass(frozen=True)
class _Claim:
    description: str
    param: str  # "n" or "m"
    kind: str  # "functions", "points", "constructions", "oracles"
    parity: int | None = None  # required parity of n
    min_size: int = 1
    population: str = "all"  # for kind == "functions": "all", "negabent", "bent_negabent"
    check: Callable[[BooleanFunction], bool] | None = None
    default_mode: str = "exhaustive"


CLAIMS: dict[str, _Claim] = {
    "THM-EVEN": _Claim(
        "even n: f negabent iff f + sigma_2 bent", "n", "functions", parity=0, min_size=2,
        check=_check_thm_even,
    ),
    "THM-ODD-1234": _Claim(
        "odd n: negabent / semibent with asymmetry / bent halves / bent extension agree",
        "n", "functions", parity=1, min_size=3, check=_check_thm_odd,
    ),
    "LEM-SPECTRUM-VALUES": _Claim(
        "negabent nega spectra take only the four admissible values", "n", "functions",
        population="negabent", check=_check_spectrum_values,
    ),
    "THM-DIST-EVEN": _Claim(
        "even n: negabent nega histogram is one of two count vectors", "n", "functions",
        parity=0, min_size=2, population="negabent", check=_check_distribution,
    ),
    "THM-DIST-ODD": _Claim(
        "odd n: negabent nega histogram is one of two count vectors", "n", "functions",
        parity=1, population="negabent", check=_check_distribution,
    ),
    "COR-SIGMA2-CLOSURE": _Claim(
        "f bent-negabent implies f + sigma_2 bent-negabent", "n", "functions",
        parity=0, min_size=2, population="bent_negabent", check=_check_sigma2_closure,
    ),
    "DEG-BOUND": _Claim(
        "negabent functions have degree at most ceil(n/2)", "n", "functions",
        population="negabent", check=_check_degree_bound,
    ),
    "NAC-CRITERION": _Claim(
        "spectral negabent test agrees with vanishing nega-autocorrelation", "n", "functions",
        check=_check_nac,
    ),
    "LEM1-EQUIV": _Claim(
        "butterfly WHT = naive WHT and nega spectrum via f + sigma_2 = direct sum",
        "n", "oracles",
    ),
    "WTMOD4": _Claim("wt(x) = sigma_1(x) + 2 sigma_2(x) mod 4", "n", "points", min_size=2),
    "SIGMA2-CANONICAL": _Claim(
        "sigma_2(x) = h(xA + b) + eps and A A = I", "m", "points", min_size=2,
    ),
    "THM5-CONSTRUCT": _Claim(
        "constructed functions are bent-negabent of the targeted degree", "m",
        "constructions", min_size=2, default_mode="random",
    ),
    "DUAL-CLOSURE": _Claim(
        "duals of constructed functions are bent-negabent; degree m is kept; degree inequality",
        "m", "constructions", min_size=2, default_mode="random",
    ),
}


@dataclass(frozen=True)
class CampaignSpec:
    claim: str
    n: int | None = None
    m: int | None = None
    mode: str | None = None
    samples: int = 1000
    seed: int = 0

    @property
    def size(self) -> int:
        """n or m, whichever the claim is parameterised by."""
        return self.n if CLAIMS[self.claim].param == "n" else self.m

    def resolved_mode(self) -> str:
        return self.mode or CLAIMS[self.claim].default_mode

    def validate(self) -> None:
        if self.claim not in CLAIMS:
            raise CampaignError(f"unknown claim id {self.claim!r}; known: {', '.join(CLAIMS)}")
        c = CLAIMS[self.claim]
        size = self.size
        if size is None:
            raise CampaignError(f"{self.claim} needs --{c.param}")
        if size < c.min_size:
            raise CampaignError(f"{self.claim} needs {c.param} >= {c.min_size}")
        if c.param == "n" and c.parity is not None and size % 2 != c.parity:
            raise CampaignError(f"{self.claim} needs an {'even' if c.parity == 0 else 'odd'} n")
        mode = self.resolved_mode()
        if mode not in ("exhaustive", "random"):
            raise CampaignError(f"mode must be 'exhaustive' or 'random', got {mode!r}")
        if self.samples < 1:
            raise CampaignError("samples must be positive")
        if mode == "exhaustive":
            if c.kind in ("functions", "oracles") and size > EXHAUSTIVE_FUNCTION_LIMIT:
                raise CampaignError(
                    f"exhaustive function sweeps are limited to n <= {EXHAUSTIVE_FUNCTION_LIMIT}"
                )
            points = size if c.param == "n" else 2 * size
            if c.kind == "points" and points > EXHAUSTIVE_POINT_LIMIT:
                raise CampaignError(
                    f"exhaustive point sweeps are limited to {EXHAUSTIVE_POINT_LIMIT} variables"
                )
            if c.kind == "constructions":
                raise CampaignError(f"{self.claim} has no exhaustive mode; use random")


@dataclass
class CampaignResult:
    claim: str
    n: int | None
    m: int | None
    mode: str
    samples: int | None
    seed: int
    tested: int
    violations: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        d["wall_time"] = round(self.wall_time, 3)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# -- runners ---------------------------------------------------------------------


def _sweep(fs: Iterable[BooleanFunction], check: Callable[[BooleanFunction], bool]):
    tested = 0
    bad = []
    for f in fs:
        tested += 1
        if not check(f):
            bad.append(shrink_counterexample(f, lambda g: not check(g)).to_hex())
    return tested, bad


def _sweep_slice(args) -> tuple[int, list[str]]:
    claim, n, start, stop = args
    return _sweep(all_functions(n, start, stop), CLAIMS[claim].check)


def _bent_negabent_population(n: int, rng: np.random.Generator | None, count: int):
    if rng is None:
        return [f for f in enumerate_negabent(n) if cl.is_bent(f)]
    if n < 4:
        raise CampaignError("random bent-negabent sampling needs n >= 4")
    m = n // 2
    return (
        build_bent_negabent(degree_targeted_recipe(m, int(rng.integers(2, m + 1)), int(rng.integers(1 << 31))))
        for _ in range(count)
    )


def _run_functions(spec: CampaignSpec, workers: int) -> tuple[int, list[str]]:
    c = CLAIMS[spec.claim]
    n = spec.n
    exhaustive = spec.resolved_mode() == "exhaustive"
    rng = None if exhaustive else make_rng(spec.seed)
    if c.population == "all":
        if exhaustive:
            total = 1 << (1 << n)
            if workers > 1 and total >= 1 << 12:
                bounds = np.linspace(0, total, workers + 1, dtype=np.int64)
                jobs = [(spec.claim, n, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]
                with ProcessPoolExecutor(workers) as pool:
                    parts = list(pool.map(_sweep_slice, jobs))
                return sum(p[0] for p in parts), [v for p in parts for v in p[1]]
            return _sweep(all_functions(n), c.check)
        fs = list(random_functions(n, spec.samples, rng))
        # uniform random functions are almost never negabent; add a few that are
        positives = [random_negabent(n, rng) for _ in range(max(1, spec.samples // 100))]
        return _sweep(fs + positives, c.check)
    if c.population == "negabent":
        fs = enumerate_negabent(n) if exhaustive else [random_negabent(n, rng) for _ in range(spec.samples)]
        return _sweep(fs, c.check)
    return _sweep(_bent_negabent_population(n, rng, spec.samples), c.check)


def _run_oracles(spec: CampaignSpec) -> tuple[int, list[str]]:
    n = spec.n
    if spec.resolved_mode() == "exhaustive":
        tables = _all_tables(n)
    else:
        rng = make_rng(spec.seed)
        tables = rng.integers(0, 2, (spec.samples, 1 << n), dtype=np.uint8)
    bad = []
    batch = 1024
    for start in range(0, len(tables), batch):
        t = tables[start:start + batch]
        w_ok = np.all(walsh_batch(t) == walsh_naive_batch(t), axis=1)
        r1, i1 = nega_fast_batch(t)
        r2, i2 = nega_direct_batch(t)
        n_ok = np.all((r1 == r2) & (i1 == i2), axis=1)
        for k in np.flatnonzero(~(w_ok & n_ok)):
            bad.append(BooleanFunction(t[k]).to_hex())
    return len(tables), bad


def _point_hex(idx: np.ndarray, nvars: int) -> list[str]:
    width = max(1, -(-nvars // 4))
    return [format(int(i), f"0{width}x") for i in idx]


def _run_points(spec: CampaignSpec) -> tuple[int, list[str]]:
    exhaustive = spec.resolved_mode() == "exhaustive"
    if spec.claim == "WTMOD4":
        n = spec.n
        if exhaustive:
            lhs = popcounts(n) & 3
            rhs = (sigma_d(n, 1).table.astype(np.int64) + 2 * sigma_d(n, 2).table) & 3
            return lhs.size, _point_hex(np.flatnonzero(lhs != rhs), n)
        xs = make_rng(spec.seed).integers(0, 1 << n, spec.samples)
        w = np.array([bin(int(x)).count("1") for x in xs])
        s1 = w & 1
        s2 = (w * (w - 1) // 2) & 1
        return xs.size, _point_hex(xs[(w & 3) != ((s1 + 2 * s2) & 3)], n)
    # SIGMA2-CANONICAL
    m = spec.m
    n = 2 * m
    form = canonical_form(m, verify=False)
    bad = [] if form.A @ form.A == Gf2Matrix.identity(n) else ["A*A!=I"]
    if exhaustive:
        lhs = cl.sigma2(n).table
        rhs = affine_compose(form.h, form.A, form.b, None, form.eps).table
        return lhs.size, bad + _point_hex(np.flatnonzero(lhs != rhs), n)
    xs = make_rng(spec.seed).integers(0, 2, (spec.samples, n)).astype(np.int64)
    w = xs.sum(axis=1)
    lhs = (w * (w - 1) // 2) & 1
    y = ((xs @ form.A.array.astype(np.int64)) & 1) ^ form.b
    rhs = (np.sum(y[:, :m] & y[:, m:], axis=1) & 1) ^ form.eps
    idx = (xs << np.arange(n)).sum(axis=1)
    return len(xs), bad + _point_hex(idx[lhs != rhs], n)


def _run_constructions(spec: CampaignSpec) -> tuple[int, list[str]]:
    m = spec.m
    n = 2 * m
    rng = make_rng(spec.seed)
    bad = []
    for k in range(spec.samples):
        d = 2 + k % (m - 1)
        f = build_bent_negabent(degree_targeted_recipe(m, d, int(rng.integers(1 << 31))))
        if spec.claim == "THM5-CONSTRUCT":
            ok = cl.is_bent_negabent(f) and degree(f) == d
        else:
            ok = cl.is_bent(f)
            if ok:
                fd = cl.dual(f)
                df, dd = degree(f), degree(fd)
                ok = cl.is_bent_negabent(fd) and cl.dual(fd) == f
                ok = ok and (df != m or dd == m)
                ok = ok and (dd < 2 or cl.dual_degree_inequality(n, df, dd))
                ok = ok and (df < 2 or cl.dual_degree_inequality(n, dd, df))
        if not ok:
            bad.append(f.to_hex())
    return spec.samples, bad


def run_campaign(spec: CampaignSpec, workers: int = 1) -> CampaignResult:
    """Run one campaign. ``workers > 1`` splits exhaustive function sweeps across processes."""
    spec.validate()
    kind = CLAIMS[spec.claim].kind
    t0 = time.perf_counter()
    if kind == "functions":
        tested, bad = _run_functions(spec, workers)
    elif kind == "oracles":
        tested, bad = _run_oracles(spec)
    elif kind == "points":
        tested, bad = _run_points(spec)
    else:
        tested, bad = _run_constructions(spec)
    mode = spec.resolved_mode()
    return CampaignResult(
        claim=spec.claim,
        n=spec.n,
        m=spec.m,
        mode=mode,
        samples=None if mode == "exhaustive" else spec.samples,
        seed=spec.seed,
        tested=tested,
        violations=bad,
        wall_time=time.perf_counter() - t0,
    )

