"""Error of the truncated series as the fractional order varies.

Writes one CSV per order and prints the error at a probe point together with
the worst error over the grid.
"""

from __future__ import annotations

import argparse
from fractions import Fraction
from pathlib import Path

from iatm.expr import evaluate
from iatm.fixtures import fixture
from iatm.problems import builtin_problem
from iatm.solver import solve
from iatm.tables import GridSpec, emit_csv, error_table


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--problem", default="p2", choices=["p1", "p2", "p3"])
    ap.add_argument("--alphas", default="1/2,3/5,7/10,4/5,9/10,1")
    ap.add_argument("--iterations", type=int, default=3)
    ap.add_argument("--probe", type=float, nargs=2, default=(0.5, 0.05), metavar=("X", "T"))
    ap.add_argument("--out-dir", type=Path, default=Path("results/sweep"))
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    grid = GridSpec.from_fixture(fixture(args.problem))
    x0, t0 = args.probe
    print(f"{'alpha':>6}  {'probe error':>12}  {'grid max':>12}")
    for text in args.alphas.split(","):
        a = Fraction(text)
        p = builtin_problem(args.problem, a)
        sol = solve(p, args.iterations)
        rows = error_table(p, sol, grid)
        emit_csv(rows, args.out_dir / f"{args.problem}_alpha{float(a):g}.csv")
        probe = abs(evaluate(sol.approximation, x0, t0) - evaluate(p.exact, x0, t0))
        worst = max(r.abs_error_per_iteration[-1] for r in rows)
        print(f"{float(a):>6g}  {probe:12.3e}  {worst:12.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
