"""Command-line entry point.

Exit codes: 0 all checks pass, 1 comparison failures, 2 usage or parse
errors, 3 term-cap abort.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .checks import table_checks
from .errors import DomainError, ParseError, TermCapExceeded
from .expr import evaluate
from .fixtures import FIXTURE_IDS, fixture
from .parser import parse_rational
from .problems import load_problem
from .solver import DEFAULT_TERM_CAP, Scheme, residual, solve
from .tables import GridSpec, emit_csv, error_table

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _alpha(text: str) -> Fraction:
    try:
        a = parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not 0 < a <= 1:
        raise argparse.ArgumentTypeError(f"alpha must lie in (0, 1], got {text}")
    return a


def _grid(problem_ref: str, text: str) -> GridSpec:
    if text == "table":
        if problem_ref not in FIXTURE_IDS:
            raise UsageError(f"--grid table needs one of {', '.join(FIXTURE_IDS)}")
        return GridSpec.from_fixture(fixture(problem_ref))
    try:
        return GridSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _format_alpha(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else format(a.numerator / a.denominator, "g")


def cmd_solve(args) -> int:
    p = load_problem(args.problem, args.alpha)
    grid = _grid(args.problem, args.grid)
    sol = solve(p, args.iterations, Scheme(args.scheme), term_cap=args.term_cap)
    rows = error_table(p, sol, grid)
    if args.out == "-":
        emit_csv(rows, sys.stdout)
    else:
        emit_csv(rows, args.out)
        print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_table(args) -> int:
    if args.alpha != 1:
        raise UsageError("the published tables are for alpha = 1")
    fx = fixture(args.problem)
    results = table_checks(args.problem, args.factor)
    from .checks import run_table  # cached by table_checks

    run = run_table(args.problem)
    labels = [label for label, _ in fx.iteration_columns("iatm")]
    print(f"{args.problem}: S_0..S_{run.solution.n}, term counts {run.solution.term_counts}")
    header = f"{'t':>6} {'x':>4} {'approx':>13} {'exact':>13} " + " ".join(f"{'S_' + str(k):>9}" for k in range(run.solution.n + 1))
    print(header)
    for r in run.rows:
        errs = " ".join(f"{e:9.2e}" for e in r.abs_error_per_iteration)
        print(f"{r.t:6g} {r.x:4g} {r.approximate:13.9f} {r.exact:13.9f} {errs}")
    if fx.note:
        print(f"note: {fx.note}")
    print(f"printed columns: {', '.join(fx.columns)} (iatm labels {', '.join(labels)})")
    if not args.check:
        return EXIT_OK
    for res in results:
        print(res.line())
    return EXIT_OK if all(r.passed for r in results if r.required) else EXIT_FAIL


def cmd_residual(args) -> int:
    p = load_problem(args.problem, args.alpha)
    sol = solve(p, args.iterations, Scheme(args.scheme), term_cap=args.term_cap)
    rng = np.random.default_rng(args.seed)
    lo, hi = p.x_range
    t_hi = float(p.t_max) if args.t_max is None else args.t_max
    xs = rng.uniform(lo, hi, args.points)
    ts = rng.uniform(0.0, t_hi, args.points)
    ts[ts == 0] = t_hi / 2
    pts = list(zip(xs.tolist(), ts.tolist()))
    for k, S in enumerate(sol.partial_sums):
        worst = max(abs(r) for r in residual(p, S, pts))
        print(f"S_{k} max|residual| = {worst:.6e}")
    if p.exact is not None:
        worst = max(abs(r) for r in residual(p, p.exact, pts))
        print(f"exact max|residual| = {worst:.6e}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        alphas = [parse_rational(a) for a in args.alphas.split(",")]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    name = Path(args.problem).stem
    x0, t0 = args.probe
    for a in alphas:
        p = load_problem(args.problem, a)
        grid = _grid(args.problem, args.grid)
        sol = solve(p, args.iterations, Scheme(args.scheme), term_cap=args.term_cap)
        rows = error_table(p, sol, grid)
        # S_{n-1} and S_n files: both truncations are plausible figure data
        for k in (sol.n - 1, sol.n):
            if k < 0:
                continue
            trimmed = [
                type(r)(r.t, r.x, float(evaluate(sol.partial_sums[k], r.x, r.t)), r.exact, r.abs_error_per_iteration[: k + 1])
                for r in rows
            ]
            emit_csv(trimmed, out / f"{name}_alpha{_format_alpha(a)}_S{k}.csv")
        probe = abs(evaluate(sol.approximation, x0, t0) - evaluate(p.exact, x0, t0)) if p.exact else float("nan")
        print(f"alpha={_format_alpha(a)} |S_{sol.n} - exact| at (x, t) = ({x0:g}, {t0:g}): {probe:.6e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="iatm", description="Series solutions of fractional PIDEs.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, alpha_default=None):
        sp.add_argument("--problem", required=True, help="p1, p2, p3 or a problem document path")
        sp.add_argument("--alpha", type=_alpha, default=alpha_default)
        sp.add_argument("--iterations", type=int, default=3)
        sp.add_argument("--scheme", choices=[s.value for s in Scheme], default="iatm")
        sp.add_argument("--term-cap", type=int, default=DEFAULT_TERM_CAP)

    sp = sub.add_parser("solve", help="solve and write an error table as CSV")
    common(sp)
    sp.add_argument("--grid", default="table", help="'table' or 't0,t1,...;x0,x1,...'")
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("table", help="reproduce a published table")
    sp.add_argument("--problem", required=True, choices=FIXTURE_IDS)
    sp.add_argument("--alpha", type=_alpha, default=Fraction(1))
    sp.add_argument("--check", action="store_true")
    sp.add_argument("--factor", type=float, default=10.0)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("residual", help="max |residual| per partial sum")
    common(sp)
    sp.add_argument("--points", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--t-max", type=float, default=None)
    sp.set_defaults(func=cmd_residual)

    sp = sub.add_parser("sweep-alpha", help="error tables over several alpha values")
    common(sp)
    sp.add_argument("--alphas", default="0.7,0.8,0.9,1.0")
    sp.add_argument("--out-dir", required=True)
    sp.add_argument("--grid", default="table")
    sp.add_argument("--probe", type=float, nargs=2, default=(0.5, 0.05), metavar=("X", "T"))
    sp.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if getattr(args, "iterations", 0) < 0 or getattr(args, "points", 1) < 1:
            raise UsageError("--iterations must be >= 0 and --points >= 1")
        return args.func(args)
    except TermCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, ParseError, DomainError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
