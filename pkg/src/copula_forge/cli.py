"""``copula-forge`` command line.

Exit status: 0 success, 1 a check or suite found a violation, 2 usage or
spec-parse error, 3 the sup-norm search ran out of budget.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .core import GridCopula, Point, evaluate, sample_grid
from .grammar import CopulaSpecError, parse_copula_spec, unparse
from .measures import (
    DEFAULT_RESOLUTION,
    DEFAULT_TOL,
    SupNormBudgetError,
    asymmetry_mu,
    full_report,
    radial_asymmetry_nu,
)
from .verify import (
    DEFAULT_SEED,
    check_axioms,
    convexity_suite,
    format_report,
    identity_suite,
    inverse_problem_suite,
    projection_optimality_suite,
    radial_corpus,
    symmetric_corpus,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def write_grid_csv(grid: GridCopula, fh) -> None:
    """Header ``u,v,value`` then one row per lattice node, ``u`` major, 17 digits."""
    fh.write("u,v,value\n")
    t = grid.nodes
    for i in range(grid.n + 1):
        ui = f"{t[i]:.17g}"
        row = grid.values[i]
        fh.write("".join(f"{ui},{t[j]:.17g},{row[j]:.17g}\n" for j in range(grid.n + 1)))


def read_grid_csv(fh) -> GridCopula:
    reader = csv.reader(fh)
    header = next(reader)
    if header != ["u", "v", "value"]:
        raise ValueError(f"unexpected grid header {header}")
    vals = [float(row[2]) for row in reader if row]
    side = int(round(len(vals) ** 0.5))
    if side * side != len(vals) or side < 2:
        raise ValueError(f"{len(vals)} rows do not form a square lattice")
    return GridCopula(side - 1, np.array(vals).reshape(side, side))


def _fmt(x) -> str:
    return "null" if x is None else repr(x)


def _cmd_eval(args, out) -> int:
    c = parse_copula_spec(args.copula)
    value = evaluate(c, Point(args.u, args.v))
    if args.json:
        out.write(json.dumps({"copula": unparse(c), "u": args.u, "v": args.v, "value": value}) + "\n")
    else:
        out.write(f"{value!r}\n")
    return EXIT_OK


def _cmd_measures(args, out) -> int:
    c = parse_copula_spec(args.copula)
    report = full_report(c, args.grid, args.tol)
    if args.json:
        out.write(json.dumps(report.to_dict()) + "\n")
        return EXIT_OK
    for key, val in report.to_dict().items():
        if key == "error_estimates":
            continue
        err = report.error_estimates.get(key)
        out.write(f"{key}: {_fmt(val)}" + (f"  (+/- {err:.3g})" if err is not None else "") + "\n")
    return EXIT_OK


def _cmd_check(args, out) -> int:
    c = parse_copula_spec(args.copula)
    report = check_axioms(c, args.rectangles, args.seed, args.tol)
    if args.json:
        out.write(json.dumps({"copula": unparse(c), **report.to_dict()}, indent=2) + "\n")
    else:
        out.write(f"copula: {unparse(c)}\n" + format_report(report))
        out.write("passed\n" if report.passed else "violation found\n")
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _cmd_grid(args, out) -> int:
    c = parse_copula_spec(args.copula)
    write_grid_csv(sample_grid(c, args.grid), out)
    return EXIT_OK


def _cmd_asymmetry(args, out) -> int:
    c = parse_copula_spec(args.copula)
    mu = asymmetry_mu(c, args.tol)
    nu = radial_asymmetry_nu(c, args.tol)
    if args.json:
        out.write(
            json.dumps({"mu": {"lower": mu.lower, "upper": mu.upper}, "nu": {"lower": nu.lower, "upper": nu.upper}})
            + "\n"
        )
    else:
        out.write(f"mu: [{mu.lower!r}, {mu.upper!r}]\nnu: [{nu.lower!r}, {nu.upper!r}]\n")
    return EXIT_OK


def _cmd_identities(args, out) -> int:
    c = parse_copula_spec(args.copula)
    reports = [
        identity_suite(args.seed),
        convexity_suite(args.seed),
        inverse_problem_suite(args.tol),
        projection_optimality_suite(c, symmetric_corpus(), args.tol),
        projection_optimality_suite(c, radial_corpus(), args.tol, radial=True),
    ]
    if args.json:
        out.write(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    else:
        out.write("\n".join(format_report(r) for r in reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="copula-forge",
        description="Bivariate copula expressions: evaluation, measures and property checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, tol=DEFAULT_TOL, copula_default=None):
        p = sub.add_parser(name, help=help)
        p.add_argument(
            "-c", "--copula", required=copula_default is None, default=copula_default,
            help="copula spec, e.g. 'sym(mo:0.5,0.25)'",
        )
        p.add_argument("-n", "--grid", type=int, default=DEFAULT_RESOLUTION, help="lattice resolution")
        p.add_argument("--tol", type=float, default=tol)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--out", type=Path, help="write output to this file")
        p.set_defaults(func=func)
        return p

    p = add("eval", _cmd_eval, "evaluate C(u, v)")
    p.add_argument("-u", type=float, required=True)
    p.add_argument("-v", type=float, required=True)
    add("measures", _cmd_measures, "tau, rho, gamma, beta, tails, mu, nu")
    p = add("check", _cmd_check, "test the copula axioms", tol=1e-12)
    p.add_argument("--rectangles", type=int, default=10_000)
    add("grid", _cmd_grid, "sample the (n+1)^2 lattice as CSV")
    add("asymmetry", _cmd_asymmetry, "certified bounds on mu and nu")
    add("identities", _cmd_identities, "run the identity and inverse-problem suites", copula_default="mo:0.5,0.25")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with contextlib.ExitStack() as stack:
            out = stack.enter_context(args.out.open("w", newline="")) if args.out else sys.stdout
            return args.func(args, out)
    except CopulaSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SupNormBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
