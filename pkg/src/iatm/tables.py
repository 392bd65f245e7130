"""Error tables, fixture comparison and CSV output."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .expr import Expression, add, evaluate_many, scale
from .fixtures import PublishedTable
from .problem import ProblemSpec
from .solver import SeriesSolution

__all__ = [
    "GridSpec",
    "ErrorTableRow",
    "Cell",
    "ComparisonReport",
    "ERROR_FLOOR",
    "error_table",
    "compare_to_fixture",
    "compare_values",
    "value_mismatches",
    "emit_csv",
    "read_csv",
    "format_value",
]

#: Printed errors below this are at the resolution of double precision.
ERROR_FLOOR = 1e-15


@dataclass(frozen=True)
class GridSpec:
    t_values: tuple[float, ...]
    x_values: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "t_values", tuple(float(t) for t in self.t_values))
        object.__setattr__(self, "x_values", tuple(float(x) for x in self.x_values))
        if any(t < 0 for t in self.t_values):
            raise ValueError("grid times must be non-negative")

    @classmethod
    def from_fixture(cls, fx: PublishedTable) -> "GridSpec":
        return cls(tuple(fx.t_values), tuple(fx.x_values))

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """``"t0,t1,...;x0,x1,..."``."""
        try:
            ts, xs = text.split(";")
            return cls(tuple(float(v) for v in ts.split(",")), tuple(float(v) for v in xs.split(",")))
        except ValueError:
            raise ValueError(f"grid must look like 't0,t1;x0,x1', got {text!r}") from None

    def points(self) -> list[tuple[float, float]]:
        """``(t, x)`` pairs, t-major."""
        return [(t, x) for t in self.t_values for x in self.x_values]

    def check_within(self, p: ProblemSpec) -> None:
        lo, hi = p.x_range
        bad = [x for x in self.x_values if not lo - 1e-12 <= x <= hi + 1e-12]
        if bad:
            raise ValueError(f"grid x values {bad} fall outside [{lo}, {hi}]")


@dataclass(frozen=True)
class ErrorTableRow:
    t: float
    x: float
    approximate: float
    exact: float
    abs_error_per_iteration: tuple[float, ...]


def error_table(
    p: ProblemSpec,
    sol: SeriesSolution,
    grid: GridSpec,
    reference: Expression | None = None,
) -> list[ErrorTableRow]:
    """One row per grid point; ``abs_error_per_iteration[k] = |S_k - reference|``.

    ``reference`` defaults to the problem's exact solution.
    """
    ref = p.exact if reference is None else reference
    if ref is None:
        raise ValueError(f"problem {p.name!r} has no exact solution")
    grid.check_within(p)
    pts = grid.points()
    ts = np.array([t for t, _ in pts])
    xs = np.array([x for _, x in pts])
    approx = evaluate_many(sol.approximation, xs, ts)
    exact = evaluate_many(ref, xs, ts)
    # difference first, then evaluate: leading terms cancel exactly
    errors = [np.abs(evaluate_many(add(S, scale(-1.0, ref)), xs, ts)) for S in sol.partial_sums]
    return [
        ErrorTableRow(t, x, float(approx[i]), float(exact[i]), tuple(float(e[i]) for e in errors))
        for i, (t, x) in enumerate(pts)
    ]


@dataclass(frozen=True)
class Cell:
    row: int
    t: float
    x: float
    column: str
    iteration: int
    ours: float
    printed: float
    ratio: float
    passed: bool


@dataclass
class ComparisonReport:
    problem: str
    factor: float
    offset: int
    cells: list[Cell] = field(default_factory=list)
    two_sided: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    @property
    def failures(self) -> list[Cell]:
        return [c for c in self.cells if not c.passed]

    @property
    def max_ratio(self) -> float:
        ratios = [c.ratio for c in self.cells if math.isfinite(c.ratio)]
        return max(ratios, default=float("nan"))

    def alignment(self) -> dict[str, str]:
        return {c.column: f"S_{c.iteration}" for c in self.cells}

    def describe(self) -> str:
        cols = ", ".join(f"{k} -> {v}" for k, v in self.alignment().items())
        sides = "two-sided" if self.two_sided else "one-sided"
        return (
            f"{len(self.cells) - len(self.failures)}/{len(self.cells)} cells within x{self.factor:g} ({sides}); "
            f"alignment {cols}; max ratio ours/printed {self.max_ratio:.3g}"
        )

    def summary(self) -> str:
        return f"{self.problem}: {'PASS' if self.passed else 'FAIL'}; {self.describe()}"


def _cell_passes(ours: float, printed: float, factor: float, floor: float, two_sided: bool) -> bool:
    if ours < 10 * floor:
        return True  # at double-precision resolution
    if printed < floor or ours > factor * printed:
        return False
    return not two_sided or ours >= printed / factor


def compare_to_fixture(
    rows: Sequence[ErrorTableRow],
    fixture: PublishedTable,
    factor: float = 10.0,
    columns: Sequence[str] | None = None,
    offsets: Iterable[int] = (0, -1, 1),
    floor: float = ERROR_FLOOR,
    two_sided: bool = False,
) -> ComparisonReport:
    """Check our errors against printed error columns.

    The printed "k-th iteration" is matched to ``S_{k+offset}``; the offset
    with the smallest total ``|log(ours/printed)|`` wins and is reported.
    A cell passes when ``ours <= factor * printed`` (and, if ``two_sided``,
    ``ours >= printed / factor``), or when ours is below ``10 * floor``.
    """
    if columns is None:
        columns = [label for label, _ in fixture.iteration_columns("iatm")]
    index = {(round(r.t, 12), round(r.x, 12)): r for r in rows}
    expected = {(round(fr.t, 12), round(fr.x, 12)) for fr in fixture.rows}
    if set(index) != expected:
        raise ValueError("grid mismatch between the error table and the fixture")
    n_iter = min(len(r.abs_error_per_iteration) for r in rows)

    best = None
    for offset in offsets:
        ks = [int(label.split(":")[1]) + offset for label in columns]
        if min(ks) < 0 or max(ks) >= n_iter:
            continue
        cells = []
        score = 0.0
        for fr in fixture.rows:
            row = index[(round(fr.t, 12), round(fr.x, 12))]
            for label, k in zip(columns, ks):
                printed = fr.error(fixture.column(label))
                ours = row.abs_error_per_iteration[k]
                ratio = ours / printed if printed > 0 else math.inf
                if printed >= floor and ours > 0:
                    score += abs(math.log10(ratio))
                cells.append(Cell(fr.index, fr.t, fr.x, label, k, ours, printed, ratio,
                                  _cell_passes(ours, printed, factor, floor, two_sided)))
        if best is None or score < best[0]:
            best = (score, offset, cells)
    if best is None:
        raise ValueError("no alignment fits the available iterations")
    return ComparisonReport(fixture.problem, factor, best[1], best[2], two_sided)


def compare_values(ours: Sequence[float], printed: Sequence[str], tol: float) -> list[int]:
    """Indices where ``|ours - printed| > tol``."""
    return [i for i, (a, b) in enumerate(zip(ours, printed)) if abs(a - float(b)) > tol]


def _half_unit(printed: str) -> float:
    decimals = len(printed.split(".")[1]) if "." in printed else 0
    return 0.5 * 10.0**-decimals


def value_mismatches(rows: Sequence[ErrorTableRow], fixture: PublishedTable, which: str = "approximate") -> list[int]:
    """Fixture row positions whose printed value disagrees with ours.

    Exact values must agree to rounding.  A printed approximate value carries
    its own truncation error, so it may also be off by the printed error of
    the last iteration column.
    """
    index = {(round(r.t, 12), round(r.x, 12)): r for r in rows}
    bad = []
    for i, fr in enumerate(fixture.rows):
        row = index[(round(fr.t, 12), round(fr.x, 12))]
        if which == "exact":
            ours, printed, slack = row.exact, fr.exact, 0.0
        elif which == "approximate":
            ours, printed, slack = row.approximate, fr.approximate, fr.error(len(fr.errors) - 1)
        else:
            raise ValueError(f"unknown column {which!r}")
        if abs(ours - float(printed)) > _half_unit(printed) * (1 + 1e-9) + slack:
            bad.append(i)
    return bad


def format_value(v: float) -> str:
    """Positional decimal notation, 12 significant digits."""
    if v == 0:
        return "0"
    return np.format_float_positional(v, precision=12, unique=False, fractional=False, trim="-")


def _write(rows: Sequence[ErrorTableRow], out: TextIO) -> None:
    n = max((len(r.abs_error_per_iteration) for r in rows), default=0)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["t", "x", "approx", "exact", *(f"err_iter{k}" for k in range(n))])
    for r in sorted(rows, key=lambda r: (r.t, r.x)):
        writer.writerow([format_value(v) for v in (r.t, r.x, r.approximate, r.exact, *r.abs_error_per_iteration)])


def emit_csv(rows: Sequence[ErrorTableRow], destination) -> None:
    """Write rows t-major; ``err_iter{k}`` is the error of ``S_k``."""
    if isinstance(destination, (str, Path)):
        with open(destination, "w", newline="") as fh:
            _write(rows, fh)
    else:
        _write(rows, destination)


def read_csv(source) -> list[ErrorTableRow]:
    if isinstance(source, (str, Path)):
        text = Path(source).read_text()
    else:
        text = source.read()
    reader = csv.reader(io.StringIO(text))
    next(reader)
    return [
        ErrorTableRow(float(r[0]), float(r[1]), float(r[2]), float(r[3]), tuple(float(v) for v in r[4:]))
        for r in reader
    ]
