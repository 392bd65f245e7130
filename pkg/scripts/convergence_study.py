"""Residual and error decay with the number of iterations, both schemes.

    python scripts/convergence_study.py --problem p1 --iterations 5
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from iatm.fixtures import fixture
from iatm.problems import builtin_problem
from iatm.solver import Scheme, residual, solve
from iatm.tables import GridSpec, error_table


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--problem", default="p1", choices=["p1", "p2", "p3"])
    ap.add_argument("--alpha", type=Fraction, default=Fraction(1))
    ap.add_argument("--iterations", type=int, default=4)
    args = ap.parse_args()
    p = builtin_problem(args.problem, args.alpha)
    grid = GridSpec.from_fixture(fixture(args.problem))
    pts = [(x, t) for t, x in grid.points()]
    for scheme in Scheme:
        sol = solve(p, args.iterations, scheme)
        rows = error_table(p, sol, grid)
        print(f"{scheme.value}: terms per component {sol.term_counts}")
        for k, S in enumerate(sol.partial_sums):
            err = max(r.abs_error_per_iteration[k] for r in rows)
            res = max(abs(r) for r in residual(p, S, pts))
            print(f"  S_{k}: max error {err:.3e}  max residual {res:.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
