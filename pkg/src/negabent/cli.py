"""Command-line front end.

Machine-readable JSON goes to stdout, one object per line; a short human
summary goes to stderr. Exit codes: 0 ok / property holds, 1 usage error,
2 verification failure, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import classify as cl
from .boolfun import AnfPolynomial, BooleanFunction, degree, sigma_d
from .construct import (
    ConstructionRecipe,
    build_bent_negabent,
    canonical_form,
    degree_targeted_recipe,
    example_recipe,
    xy_names,
)
from .errors import CampaignError, InternalInvariantError, ConstantsMismatchError
from .gf2 import Gf2Matrix, permutation_matrix, vector_from_hex, vector_to_hex
from .harness import CLAIMS, CampaignSpec, run_campaign
from .spectra import nega_transform_fast, walsh_transform

SCHEMA_VERSION = 1
DEFAULT_CATALOG = "negabent_catalog.jsonl"

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=True), flush=True)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def catalog_path() -> Path:
    return Path(os.environ.get("NEGABENT_CATALOG", DEFAULT_CATALOG))


def _read_function(args) -> BooleanFunction:
    if (args.tt is None) == (args.anf is None):
        raise UsageError("give exactly one of --tt or --anf")
    if args.tt is not None:
        return BooleanFunction.from_hex(args.tt, args.n)
    return BooleanFunction.from_anf(AnfPolynomial.parse(args.anf, args.n))


# -- analyze --------------------------------------------------------------


def cmd_analyze(args) -> int:
    f = _read_function(args)
    report = cl.classify(f)
    out = report.to_dict()
    out["tt_hex"] = f.to_hex()
    out["anf"] = str(f.anf())
    if args.spectra:
        out["walsh"] = walsh_transform(f).tolist()
        out["nega"] = nega_transform_fast(f).tolist()
    _emit(out)
    flags = [k for k in ("is_bent", "is_semibent", "is_negabent", "is_bent_negabent") if out[k]]
    _note(f"n={f.n} degree={report.degree} " + (" ".join(flags) or "no flatness property"))
    if args.expect:
        key = "is_" + args.expect.replace("-", "_")
        return EXIT_OK if out[key] else EXIT_FAIL
    return EXIT_OK


# -- construct ------------------------------------------------------------


def _read_matrix(path: str) -> Gf2Matrix:
    try:
        return Gf2Matrix.from_text(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read matrix file: {exc}") from exc


def _recipe_from_args(args) -> ConstructionRecipe:
    if args.recipe:
        try:
            data = json.loads(Path(args.recipe).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read recipe: {exc}") from exc
        return ConstructionRecipe.from_dict(data)
    if args.example:
        base = example_recipe(args.example)
        if args.m is not None and args.m != base.m:
            raise UsageError(f"example {args.example} has m={base.m}")
    else:
        if args.m is None or args.degree is None:
            raise UsageError("construct needs --m and --degree (or --example / --recipe)")
        base = degree_targeted_recipe(args.m, args.degree, args.seed)
    m, n = base.m, 2 * base.m
    M = _read_matrix(args.matrix_file) if args.matrix_file else base.M
    O = _read_matrix(args.o_file) if args.o_file else base.O
    if args.perm:
        O = permutation_matrix([int(t) for t in args.perm.split(",")])
    g = base.g
    if args.g_anf:
        g = BooleanFunction.from_anf(AnfPolynomial.parse(args.g_anf, m, offsets={"y": 0}))
    alpha = vector_from_hex(args.alpha, n) if args.alpha else base.alpha
    beta = vector_from_hex(args.beta, n) if args.beta else base.beta
    zeta = base.zeta if args.zeta is None else args.zeta
    return ConstructionRecipe(m, M, g, O, alpha, beta, zeta)


def construction_record(recipe: ConstructionRecipe, f: BooleanFunction) -> dict:
    d = degree(f)
    verified = cl.is_bent_negabent(f)
    return {
        "schema_version": SCHEMA_VERSION,
        "recipe": recipe.to_dict(),
        "n": f.n,
        "tt_hex": f.to_hex(),
        "anf": f.anf().format(xy_names(recipe.m)),
        "degree": d,
        "verified": verified,
    }


def cmd_construct(args) -> int:
    recipe = _recipe_from_args(args)
    f = build_bent_negabent(recipe)
    record = construction_record(recipe, f)
    if args.degree is not None and record["degree"] != args.degree and not args.g_anf:
        raise InternalInvariantError(
            f"constructed degree {record['degree']} differs from target {args.degree}"
        )
    _emit(record)
    if not args.no_catalog:
        path = Path(args.catalog) if args.catalog else catalog_path()
        with path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
    _note(
        f"m={recipe.m} n={f.n} degree={record['degree']} "
        f"{'bent-negabent' if record['verified'] else 'NOT bent-negabent'}"
    )
    return EXIT_OK if record["verified"] else EXIT_FAIL


# -- verify ---------------------------------------------------------------


def cmd_verify(args) -> int:
    mode = "exhaustive" if args.exhaustive else "random" if args.random else None
    ok = True
    for claim in args.claims:
        spec = CampaignSpec(claim, n=args.n, m=args.m, mode=mode, samples=args.samples, seed=args.seed)
        result = run_campaign(spec, workers=args.workers)
        d = result.to_dict()
        if not args.timing:
            del d["wall_time"]
        _emit(d)
        _note(
            f"{claim}: {'pass' if result.passed else 'FAIL'} "
            f"({result.tested} tested, {len(result.violations)} violations, {result.wall_time:.2f}s)"
        )
        ok &= result.passed
    return EXIT_OK if ok else EXIT_FAIL


# -- decompose ------------------------------------------------------------


def cmd_decompose(args) -> int:
    f = _read_function(args)
    dec = cl.odd_decompose(f)
    roundtrip = dec.reassemble() == f ^ cl.sigma2(f.n)
    out = {
        "n": f.n,
        "g": dec.g.to_hex(),
        "h": dec.h.to_hex(),
        "g_anf": str(dec.g.anf()),
        "h_anf": str(dec.h.anf()),
        "g_bent": cl.is_bent(dec.g),
        "h_bent": cl.is_bent(dec.h),
        "negabent": cl.is_negabent(f),
        "roundtrip": roundtrip,
    }
    _emit(out)
    _note(f"g bent={out['g_bent']} h bent={out['h_bent']} negabent={out['negabent']}")
    if not roundtrip:
        raise InternalInvariantError("decomposition does not reassemble to f + sigma_2")
    return EXIT_OK


# -- sigma ----------------------------------------------------------------


def cmd_sigma(args) -> int:
    if args.canonical is not None:
        form = canonical_form(args.canonical, verify=False)
        holds = form.identity_holds()
        involution = form.A @ form.A == Gf2Matrix.identity(2 * form.m)
        _emit({
            "m": form.m,
            "A": form.A.to_text().splitlines(),
            "b": vector_to_hex(form.b),
            "eps": form.eps,
            "identity_holds": holds,
            "A_involution": involution,
        })
        _note(f"m={form.m}: identity {'holds' if holds else 'FAILS'}, A*A=I {involution}")
        return EXIT_OK if holds and involution else EXIT_FAIL
    if args.n is None or args.d is None:
        raise UsageError("sigma needs --n and --d, or --canonical M")
    f = sigma_d(args.n, args.d)
    report = cl.classify(f)
    _emit({
        "n": args.n,
        "d": args.d,
        "tt_hex": f.to_hex(),
        "anf": str(f.anf()),
        "degree": report.degree,
        "is_bent": report.is_bent,
        "is_negabent": report.is_negabent,
    })
    return EXIT_OK


# -- catalog --------------------------------------------------------------


def cmd_catalog(args) -> int:
    path = Path(args.catalog) if args.catalog else catalog_path()
    if not path.exists():
        raise UsageError(f"no catalog at {path}")
    ok = True
    count = 0
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        if not line.strip():
            continue
        rec = json.loads(line)
        count += 1
        if args.action == "list":
            _emit({k: rec[k] for k in ("n", "degree", "verified", "tt_hex")} | {"line": lineno})
            continue
        f = BooleanFunction.from_hex(rec["tt_hex"], rec["n"])
        rebuilt = build_bent_negabent(ConstructionRecipe.from_dict(rec["recipe"]))
        recheck = cl.is_bent_negabent(f) and degree(f) == rec["degree"] and rebuilt == f
        ok &= recheck or not rec["verified"]
        _emit({"line": lineno, "n": rec["n"], "degree": rec["degree"], "recheck": recheck})
    _note(f"{count} records in {path}")
    return EXIT_OK if ok else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="negabent", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def function_input(sp):
        sp.add_argument("--tt", help="truth table as hex (x_1 is the least significant index bit)")
        sp.add_argument("--anf", help='algebraic normal form, e.g. "x1x2+x3+1"')
        sp.add_argument("--n", type=int, help="number of variables (needed when hex is ambiguous)")

    a = sub.add_parser("analyze", help="classify a Boolean function")
    function_input(a)
    a.add_argument("--spectra", action="store_true", help="include full Walsh and nega spectra")
    a.add_argument("--expect", choices=["bent", "semibent", "negabent", "bent-negabent"],
                   help="exit 0 iff the property holds, 2 otherwise")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("construct", help="build a bent-negabent function")
    c.add_argument("--m", type=int)
    c.add_argument("--degree", type=int)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--example", type=int, choices=[1, 2], help="one of the two worked examples")
    c.add_argument("--recipe", help="recipe JSON file")
    c.add_argument("--matrix-file", help="override M (rows of 0/1)")
    c.add_argument("--o-file", help="override O (rows of 0/1); must be orthogonal")
    c.add_argument("--perm", help="override O by a permutation, e.g. 0,3,1,2")
    c.add_argument("--g-anf", help='override g, e.g. "y1y2y3+y1"')
    c.add_argument("--alpha", help="override alpha (hex)")
    c.add_argument("--beta", help="override beta (hex)")
    c.add_argument("--zeta", type=int, choices=[0, 1])
    c.add_argument("--catalog", help="catalog path (default: $NEGABENT_CATALOG or ./negabent_catalog.jsonl)")
    c.add_argument("--no-catalog", action="store_true")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="run verification campaigns")
    v.add_argument("claims", nargs="+", metavar="CLAIM", help=", ".join(CLAIMS))
    v.add_argument("--n", type=int)
    v.add_argument("--m", type=int)
    mode = v.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--random", action="store_true")
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--timing", action="store_true", help="include wall time in the JSON output")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("decompose", help="split an odd-n function into two halves on n-1 variables")
    function_input(d)
    d.set_defaults(func=cmd_decompose)

    s = sub.add_parser("sigma", help="elementary symmetric functions and the canonical form of sigma_2")
    s.add_argument("--n", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--canonical", type=int, metavar="M", help="check sigma_2 = h(xA+b)+eps on 2M variables")
    s.set_defaults(func=cmd_sigma)

    k = sub.add_parser("catalog", help="list or re-verify catalog records")
    k.add_argument("action", choices=["list", "verify"])
    k.add_argument("--catalog")
    k.set_defaults(func=cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InternalInvariantError, ConstantsMismatchError) as exc:
        _note(f"internal error: {exc}")
        return EXIT_INTERNAL
    except (UsageError, CampaignError, ValueError, KeyError) as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
