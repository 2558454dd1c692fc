"""Command-line front end: ``hnlab analyze | verify-paper | sweep | catalog``.

Exit codes: 0 success, 1 failed checks (verify-paper), 2 bad flags or input,
3 domain constraint violated, 4 Jacobi identity fails.
Reports go to stdout; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .exactalg import to_rational
from .liealg import (
    AlgebraError,
    DomainError,
    JacobiError,
    LieAlgebraSpec,
    UnknownAlgebraError,
    catalog_add,
    catalog_get,
    catalog_names,
    load_algebra,
    registry_dir,
)
from .reference import run_checks
from .report import SIGN_CHAR, build_report, render_text, sweep_point

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_DOMAIN, EXIT_JACOBI = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"hnlab: {msg}", file=sys.stderr)


def rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def resolve_algebra(source: str) -> LieAlgebraSpec:
    """A catalog name or a path to a definition file."""
    if source in catalog_names():
        return catalog_get(source)
    path = Path(source)
    if path.is_file():
        return load_algebra(path.read_text(encoding="utf-8"))
    raise UsageError(f"unknown algebra {source!r}: not a catalog name ({', '.join(catalog_names())}) or a file")


def parse_range(text: str) -> list[Fraction]:
    """``lo:hi:step`` (inclusive of hi) or a single value."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [to_rational(parts[0])]
        if len(parts) != 3:
            raise ValueError
        lo, hi, step = (to_rational(p) for p in parts)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"bad range {text!r}; expected lo:hi:step with exact rationals") from exc
    if step <= 0:
        raise UsageError(f"range step must be positive: {text!r}")
    out = []
    x = lo
    while x <= hi:
        out.append(x)
        x += step
    return out


# subcommands -------------------------------------------------------------------


def cmd_analyze(args) -> int:
    alg = resolve_algebra(args.algebra)
    if args.symbolic:
        if args.a is not None or args.b is not None:
            raise UsageError("--symbolic cannot be combined with --a/--b")
        at = None
    else:
        given = {"a": args.a, "b": args.b}
        extra = [k for k, v in given.items() if v is not None and k not in alg.params]
        if extra:
            raise UsageError(f"{alg.name} has no parameter(s) {', '.join(extra)}")
        missing = [p for p in alg.params if given.get(p) is None]
        if missing:
            raise UsageError(f"give --symbolic or values for {', '.join('--' + p for p in missing)}")
        at = {p: given[p] for p in alg.params}
    report = build_report(alg, at)
    if args.json:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(render_text(report))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_checks()
    for c in results.checks:
        if args.verbose or not c.ok:
            print(c.line())
    failed = len(results.failed)
    print(f"{results.passed} checks passed, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_FAILED


def _sweep_worker(job):
    alg, values = job
    return sweep_point(alg, values)


def cmd_sweep(args) -> int:
    alg = resolve_algebra(args.algebra)
    if set(alg.params) != {"a", "b"}:
        raise UsageError(f"sweep needs an algebra with parameters a, b; {alg.name} has {list(alg.params)}")
    grid = [{"a": a, "b": b} for a in parse_range(args.a_range) for b in parse_range(args.b_range)]
    if not grid:
        raise UsageError("empty parameter grid")
    inside = [pt for pt in grid if all(c.holds(pt) for c in alg.constraints)]
    skipped = len(grid) - len(inside)
    workers = args.workers or min(len(inside), os.cpu_count() or 1) or 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_worker, [(alg, pt) for pt in inside], chunksize=max(1, len(inside) // (4 * workers))))
    else:
        rows = [sweep_point(alg, pt) for pt in inside]
    if args.json:
        json.dump({"algebra": alg.name, "points": rows, "skipped": skipped}, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return EXIT_OK
    planes = list(rows[0]["sectional"]) if rows else []
    head = ["a", "b", "tau", "tau**1", "tau**2", "tau**3"] + [f"k{p}" for p in planes] + ["J1", "J2", "J3"]
    print("\t".join(head))
    for r in rows:
        cells = [r["point"]["a"], r["point"]["b"], SIGN_CHAR[r["tau"]]]
        cells += [SIGN_CHAR[r["tau_star_star"][str(a)]] for a in (1, 2, 3)]
        cells += [SIGN_CHAR[r["sectional"][p]] for p in planes]
        cells += [r["classes"][str(a)] for a in (1, 2, 3)]
        print("\t".join(cells))
    print(f"{len(rows)} points evaluated, {skipped} skipped points outside the domain")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog_names():
            alg = catalog_get(name)
            params = ", ".join(alg.params) or "none"
            domain = ", ".join(str(c) for c in alg.constraints) or "all values"
            print(f"{name}  (parameters: {params}; domain: {domain})")
            for b in alg.bracket_strings():
                print(f"  {b}")
        return EXIT_OK
    path = Path(args.file)
    if not path.is_file():
        raise UsageError(f"no such file: {args.file}")
    spec = catalog_add(path.read_text(encoding="utf-8"))
    print(f"added {spec.name} to {registry_dir()}")
    return EXIT_OK


# entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hnlab",
        description="Hypercomplex structures with Hermitian-Norden metrics on 4-dimensional Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="compute every tensor, curvature and class")
    p.add_argument("--algebra", required=True, help="catalog name or definition file")
    p.add_argument("--symbolic", action="store_true", help="keep the parameters symbolic")
    p.add_argument("--a", type=rational, help="value of a (p/q or decimal)")
    p.add_argument("--b", type=rational, help="value of b (p/q or decimal)")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-paper", help="recompute every published value and statement")
    p.add_argument("-v", "--verbose", action="store_true", help="list passing checks too")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="signs and classes over a parameter grid")
    p.add_argument("--algebra", required=True)
    p.add_argument("--a-range", required=True, metavar="LO:HI:STEP")
    p.add_argument("--b-range", required=True, metavar="LO:HI:STEP")
    p.add_argument("--workers", type=int, default=0, help="worker processes (default: one per CPU)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("catalog", help="list or register algebras")
    csub = p.add_subparsers(dest="action", required=True)
    csub.add_parser("list")
    add = csub.add_parser("add")
    add.add_argument("file")
    p.set_defaults(func=cmd_catalog)
    return parser


VALUE_FLAGS = ("--a", "--b", "--a-range", "--b-range")
NUMERIC = re.compile(r"-[\d.]")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Let ``--b -2/3`` mean ``--b=-2/3``; argparse alone reads ``-2/3`` as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and NUMERIC.match(nxt):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except DomainError as exc:
        _err(str(exc))
        return EXIT_DOMAIN
    except JacobiError as exc:
        _err(str(exc))
        return EXIT_JACOBI
    except (AlgebraError, UnknownAlgebraError) as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
