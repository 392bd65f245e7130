"""Reproduction checks of the published error tables.

Each check returns a :class:`CheckResult`.  ``required`` checks decide the
verdict; advisory ones report known disagreements with the printed tables.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .fixtures import PublishedTable, fixture
from .parser import parse_expression
from .problems import builtin_problem
from .solver import Scheme, SeriesSolution, solve
from .tables import ErrorTableRow, GridSpec, compare_to_fixture, error_table, value_mismatches

__all__ = ["CheckResult", "TableRun", "run_table", "table_checks", "TABLE_ITERATIONS", "RUNTIME_BUDGET"]

TABLE_ITERATIONS = 3
RUNTIME_BUDGET = 10.0

# cells cited for the comparison scheme: (t, x) -> printed error
LADM_CITED = {(0.001, 0.2): 2.82e-6, (0.009, 0.2): 2.46e-4}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    required: bool = True

    def line(self) -> str:
        tag = "PASS" if self.passed else ("FAIL" if self.required else "NOTE")
        return f"{tag} {self.name}: {self.detail}"


@dataclass(frozen=True)
class TableRun:
    problem: str
    fixture: PublishedTable
    solution: SeriesSolution
    rows: tuple[ErrorTableRow, ...]
    seconds: float
    printed_rows: tuple[ErrorTableRow, ...] | None = None  # against the printed reference


@lru_cache(maxsize=None)
def run_table(problem_id: str, scheme: Scheme = Scheme.IATM_DJ, iterations: int = TABLE_ITERATIONS) -> TableRun:
    fx = fixture(problem_id)
    start = time.perf_counter()
    p = builtin_problem(problem_id)
    sol = solve(p, iterations, scheme)
    grid = GridSpec.from_fixture(fx)
    rows = tuple(error_table(p, sol, grid))
    seconds = time.perf_counter() - start
    printed = None
    if fx.printed_reference:
        printed = tuple(error_table(p, sol, grid, reference=parse_expression(fx.printed_reference)))
    return TableRun(problem_id, fx, sol, rows, seconds, printed)


def _runtime(run: TableRun) -> CheckResult:
    return CheckResult(
        f"{run.problem} runtime",
        run.seconds < RUNTIME_BUDGET,
        f"{run.seconds:.2f} s for {run.solution.n} iterations (budget {RUNTIME_BUDGET:g} s)",
    )


def _columns(run: TableRun, name: str, rows, factor: float, two_sided=False, required=True, columns=None):
    rep = compare_to_fixture(rows, run.fixture, factor, columns=columns, two_sided=two_sided)
    detail = rep.describe()
    if rep.failures:
        worst = ", ".join(f"({c.t:g}, {c.x:g}) {c.column} ours {c.ours:.3g} printed {c.printed:.3g}"
                          for c in rep.failures[:4])
        detail += f"; failing cells {worst}"
    return CheckResult(name, rep.passed, detail, required), rep


def _values(run: TableRun, which: str, rows, required=True) -> CheckResult:
    bad = value_mismatches(rows, run.fixture, which)
    n = len(run.fixture.rows)
    rule = "rounding" if which == "exact" else "rounding plus the printed last-iteration error"
    detail = f"{n - len(bad)}/{n} rows agree within {rule}"
    if bad:
        detail += "; mismatched " + ", ".join(f"({run.fixture.rows[i].t:g}, {run.fixture.rows[i].x:g})" for i in bad[:5])
    return CheckResult(f"{run.problem} {which} column", not bad, detail, required)


def _p1(factor: float) -> list[CheckResult]:
    iatm = run_table("p1")
    ladm = run_table("p1", Scheme.LADM_ADOMIAN)
    out = [_runtime(iatm)]
    res, _ = _columns(iatm, "p1 IATM errors vs exact solution", iatm.rows, factor)
    out.append(res)
    res, _ = _columns(iatm, "p1 IATM errors vs printed reference", iatm.printed_rows, factor,
                      two_sided=True, required=False)
    out.append(res)
    res, rep = _columns(ladm, "p1 LADM column vs printed reference", ladm.printed_rows, factor,
                        two_sided=True, required=False, columns=["ladm:2"])
    out.append(res)
    cited = []
    ok = True
    for cell in rep.cells:
        key = (round(cell.t, 12), round(cell.x, 12))
        if key in LADM_CITED:
            good = LADM_CITED[key] / factor <= cell.ours <= LADM_CITED[key] * factor
            ok &= good
            cited.append(f"({cell.t:g}, {cell.x:g}) S_{cell.iteration} {cell.ours:.3g} vs {LADM_CITED[key]:.3g}")
    out.append(CheckResult("p1 LADM cited cells", ok and len(cited) == len(LADM_CITED), "; ".join(cited)))
    # same iteration count, both schemes, rows where the printed table favours IATM
    col_l = iatm.fixture.column("ladm:2")
    col_i = iatm.fixture.column("iatm:2")
    favoured = {(round(fr.t, 12), round(fr.x, 12)) for fr in iatm.fixture.rows if fr.error(col_i) < fr.error(col_l)}
    worse = []
    for ri, rl in zip(iatm.rows, ladm.rows):
        if (round(ri.t, 12), round(ri.x, 12)) not in favoured:
            continue
        for k in (2, 3):
            if not ri.abs_error_per_iteration[k] < rl.abs_error_per_iteration[k]:
                worse.append(f"({ri.t:g}, {ri.x:g}) S_{k}")
    out.append(CheckResult(
        "p1 IATM below LADM",
        not worse,
        f"{len(favoured)} favoured rows at S_2 and S_3" + (f"; not below at {', '.join(worse)}" if worse else ""),
    ))
    out.append(_values(iatm, "approximate", iatm.rows))
    out.append(_values(iatm, "exact", iatm.printed_rows))
    return out


def _p2(factor: float) -> list[CheckResult]:
    run = run_table("p2")
    res, _ = _columns(run, "p2 IATM errors", run.rows, factor)
    return [_runtime(run), res, _values(run, "approximate", run.rows), _values(run, "exact", run.rows)]


def _p3(factor: float) -> list[CheckResult]:
    run = run_table("p3")
    out = [_runtime(run)]
    fr = run.fixture.rows[0]
    rep = compare_to_fixture(run.rows, run.fixture, factor)
    cells = [c for c in rep.cells if c.row == fr.index]
    cascade = " -> ".join(f"{c.ours:.3g} ({c.printed:.3g})" for c in cells)
    out.append(CheckResult(
        f"p3 first-row cascade at ({fr.t:g}, {fr.x:g})",
        all(c.passed for c in cells),
        f"ours (printed): {cascade}",
    ))
    res, _ = _columns(run, "p3 full table", run.rows, factor, required=False)
    out.append(res)
    out.append(_values(run, "approximate", run.rows))
    out.append(_values(run, "exact", run.rows))
    return out


def table_checks(problem_id: str, factor: float = 10.0) -> list[CheckResult]:
    return {"p1": _p1, "p2": _p2, "p3": _p3}[problem_id](factor)
