"""Built-in benchmark problems as problem documents.

Each document is a template in ``alpha``; the exact solutions do not depend
on ``alpha`` because the sources are built from them.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .parser import SourceText, parse_problem
from .problem import ProblemSpec

__all__ = ["BUILTIN_DOCUMENTS", "builtin_problem", "load_problem", "problem_document"]

_P1 = """\
name = p1
alpha = {alpha}
initial = sin(pi*x)
# the x-free terms of the source carry a sin(2*pi*x) factor; without it
# the stated exact solution does not satisfy the equation (see p1-printed)
source = pi*(pi*t^alpha/alpha - 4*t^3*cos(2*pi*x))*sin(pi*x) \\
    + (pi/2 - 12*t^(3-alpha)/gamma(4-alpha) - 2*pi*t^3*cos(pi*x) \\
       - 48*pi^2*gamma(alpha)*t^(3+alpha)/gamma(4+alpha))*sin(2*pi*x) \\
    + 8*pi*t^6*cos(2*pi*x)*sin(2*pi*x)
exact = sin(pi*x) - 2*t^3*sin(2*pi*x)
x_min = 0
x_max = 1
t_max = 1
nonlinearity = advection
"""

# verbatim transcription, kept to demonstrate the inconsistency
_P1_PRINTED = """\
name = p1-printed
alpha = {alpha}
initial = sin(pi*x)
source = pi*(pi*t^alpha/alpha - 4*t^3*cos(2*pi*x))*sin(pi*x) + pi/2 \\
    - 12*t^(3-alpha)/gamma(4-alpha) - 2*pi*t^3*cos(pi*x) \\
    - 48*pi^2*gamma(alpha)*t^(3+alpha)/gamma(4+alpha) \\
    + 8*pi*t^6*cos(2*pi*x)*sin(2*pi*x)
exact = sin(pi*x) - 2*t^3*sin(2*pi*x)
x_min = 0
x_max = 1
t_max = 1
"""

_P2 = """\
name = p2
alpha = {alpha}
initial = 0
source = (6*t^(3-alpha)/gamma(4-alpha) + pi*t^6*cos(pi*x) \\
    + 6*pi^2*gamma(alpha)*t^(3+alpha)/gamma(4+alpha))*sin(pi*x)
exact = t^3*sin(pi*x)
x_min = 0
x_max = 1
t_max = 1
"""

_P3 = """\
name = p3
alpha = {alpha}
initial = x^2*(1-x)^2
source = gamma(7/2)*t^(5/2-alpha)*x^2*(1-x)^2/gamma(7/2-alpha) \\
    - 2*(t^alpha/alpha + gamma(7/2)*gamma(alpha)*t^(5/2+alpha)/gamma(7/2+alpha))*(6*x^2-6*x+1) \\
    + 2*(1+t^(5/2))^2*(1-2*x)*x^3*(1-x)^3
exact = (1+t^(5/2))*x^2*(1-x)^2
x_min = 0
x_max = 1
t_max = 1
"""

BUILTIN_DOCUMENTS = {"p1": _P1, "p2": _P2, "p3": _P3, "p1-printed": _P1_PRINTED}


def problem_document(problem_id: str, alpha=1) -> str:
    try:
        template = BUILTIN_DOCUMENTS[problem_id]
    except KeyError:
        raise KeyError(f"unknown problem {problem_id!r}; choose from {sorted(BUILTIN_DOCUMENTS)}") from None
    return template.format(alpha=Fraction(alpha))


def builtin_problem(problem_id: str, alpha=1) -> ProblemSpec:
    return parse_problem(SourceText(problem_document(problem_id, alpha), origin=problem_id))


def load_problem(ref: str, alpha=None) -> ProblemSpec:
    """A built-in id or a path to a problem document.

    ``alpha`` overrides the document's own value when given.
    """
    if ref in BUILTIN_DOCUMENTS:
        return builtin_problem(ref, 1 if alpha is None else alpha)
    text = Path(ref).read_text()
    if alpha is not None:
        lines = [
            f"alpha = {Fraction(alpha)}" if line.split("=", 1)[0].strip() == "alpha" else line
            for line in text.splitlines()
        ]
        text = "\n".join(lines)
    return parse_problem(SourceText(text, origin=ref))
