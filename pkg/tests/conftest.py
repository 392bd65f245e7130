from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from iatm.expr import ONE, add_all, cos_pi, multiply, sin_pi, t_power, x_power

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

EXPONENTS = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3)]


@st.composite
def terms(draw, max_harmonic=3, max_xpower=3, exponents=EXPONENTS):
    c = draw(st.floats(min_value=-3, max_value=3, allow_nan=False).filter(lambda v: abs(v) > 1e-3))
    m = draw(st.integers(0, max_xpower))
    kind = draw(st.sampled_from(["unit", "sin", "cos"]))
    k = draw(st.integers(1, max_harmonic))
    beta = draw(st.sampled_from(exponents))
    trig = {"unit": ONE, "sin": sin_pi(k), "cos": cos_pi(k)}[kind]
    return multiply(multiply(t_power(beta, c), x_power(m)), trig)


def expressions(max_terms=4, **kw):
    return st.lists(terms(**kw), min_size=0, max_size=max_terms).map(add_all)


def nonempty_expressions(max_terms=4, **kw):
    return st.lists(terms(**kw), min_size=1, max_size=max_terms).map(add_all).filter(bool)


unit_points = st.tuples(
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=0.0, max_value=1.0),
)


def rel_close(a: float, b: float, rtol: float, scale: float = 1.0) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b), scale)


@pytest.fixture(scope="session")
def p1_solution():
    from iatm.problems import builtin_problem
    from iatm.solver import solve

    p = builtin_problem("p1")
    return p, solve(p, 3)
