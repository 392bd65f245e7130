import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from iatm.errors import DomainError, TermCapExceeded
from iatm.expr import ZERO, add, add_all, evaluate, evaluate_many, multiply, polynomial, sin_pi, structurally_equal, t_power
from iatm.problem import ProblemSpec
from iatm.problems import builtin_problem
from iatm.solver import Scheme, compute_u0, compute_u1, compute_uj, solve

PIDS = ["p1", "p2", "p3"]
ALPHAS = [Fraction(1), Fraction(9, 10), Fraction(7, 10), Fraction(1, 2)]


def err(p, S, x, t):
    return abs(evaluate(add(S, -p.exact), x, t))


# -- small hand-checked cases ------------------------------------------------------


def test_zero_source_gives_initial_as_u0():
    g = add(sin_pi(1), polynomial([0, 1, -1]))
    p = ProblemSpec(Fraction(1, 2), g, ZERO)
    assert compute_u0(p) == g


def test_zero_data_stays_zero():
    p = ProblemSpec(Fraction(1), ZERO, ZERO)
    sol = solve(p, 3)
    assert all(c.is_zero() for c in sol.components)


def test_zero_iterations():
    p = builtin_problem("p2")
    sol = solve(p, 0)
    assert sol.n == 0 and len(sol.partial_sums) == 1 and sol.approximation == compute_u0(p)


def test_first_correction_by_hand():
    # u0 = sin(pi x), alpha = 1, f = 0:
    # u1 = I[-pi^2 t sin(pi x) - (pi/2) sin(2 pi x)]
    p = ProblemSpec(Fraction(1), sin_pi(1), ZERO)
    u1 = compute_u1(p, compute_u0(p))
    expected = add(multiply(t_power(2), sin_pi(1, -math.pi**2 / 2)), multiply(t_power(1), sin_pi(2, -math.pi / 2)))
    assert structurally_equal(u1, expected, 1e-13)


def test_problem_validation():
    with pytest.raises(DomainError):
        ProblemSpec(Fraction(3, 2), ZERO, ZERO)
    with pytest.raises(DomainError):
        ProblemSpec(Fraction(1), t_power(1), ZERO)
    with pytest.raises(DomainError):
        ProblemSpec(Fraction(1), ZERO, ZERO, x_range=(1.0, 0.0))


def test_negative_iterations_rejected():
    with pytest.raises(ValueError):
        solve(builtin_problem("p2"), -1)


def test_compute_uj_needs_history():
    p = builtin_problem("p2")
    with pytest.raises(IndexError):
        compute_uj(p, [ZERO], 1, Scheme.IATM_DJ)
    with pytest.raises(IndexError):
        compute_uj(p, [ZERO], 3, Scheme.IATM_DJ)


def test_term_cap():
    with pytest.raises(TermCapExceeded):
        solve(builtin_problem("p3"), 3, term_cap=500)


# -- scheme invariants -------------------------------------------------------------


@settings(max_examples=12)
@given(st.sampled_from(PIDS), st.sampled_from(ALPHAS))
def test_schemes_share_u0_and_u1(pid, a):
    p = builtin_problem(pid, a)
    iatm = solve(p, 1, Scheme.IATM_DJ)
    ladm = solve(p, 1, Scheme.LADM_ADOMIAN)
    assert iatm.components == ladm.components


def test_schemes_differ_from_u2():
    p = builtin_problem("p1")
    assert solve(p, 2, Scheme.IATM_DJ).components[2] != solve(p, 2, Scheme.LADM_ADOMIAN).components[2]


@pytest.mark.parametrize("pid", PIDS)
@pytest.mark.parametrize("a", [Fraction(1), Fraction(1, 2)])
def test_initial_condition_preserved(pid, a):
    p = builtin_problem(pid, a)
    sol = solve(p, 2)
    for x in np.linspace(0, 1, 11):
        for S in sol.partial_sums:
            assert abs(evaluate(S, x, 0.0) - evaluate(p.initial, x, 0.0)) < 1e-14


@pytest.mark.parametrize("scheme", list(Scheme))
def test_partial_sums_consistent(scheme):
    sol = solve(builtin_problem("p1"), 3, scheme)
    xs, ts = np.meshgrid(np.linspace(0, 1, 11), np.linspace(0, 0.5, 11))
    for k, S in enumerate(sol.partial_sums):
        # summation order may leave different cancellation dust, so compare values
        diff = evaluate_many(S, xs, ts) - evaluate_many(add_all(sol.components[: k + 1]), xs, ts)
        assert np.abs(diff).max() < 1e-13
    assert sol.term_counts == tuple(len(c) for c in sol.components)


def test_deterministic():
    p = builtin_problem("p3", Fraction(7, 10))
    assert solve(p, 2) == solve(p, 2)


# -- published values ------------------------------------------------------------


def test_p1_initial_part_of_u0():
    p = builtin_problem("p1")
    u0 = compute_u0(p)
    for x in np.linspace(0, 1, 11):
        assert abs(evaluate(u0, x, 0.0) - math.sin(math.pi * x)) < 1e-15


def test_p2_first_two_errors():
    # printed: 1.97e-10 for the first iteration, 2.78e-14 once u_1 is added
    p = builtin_problem("p2")
    sol = solve(p, 1)
    e0 = err(p, sol.partial_sums[0], 0.5, 0.01)
    e1 = err(p, sol.partial_sums[1], 0.5, 0.01)
    assert e0 <= 1.97e-10
    assert e1 <= 10 * 2.78e-14 and e1 < e0


def test_p1_iatm_errors(p1_solution):
    p, sol = p1_solution
    assert err(p, sol.partial_sums[2], 0.2, 0.001) <= 10 * 1.55e-9
    assert err(p, sol.partial_sums[3], 0.2, 0.001) <= 10 * 1.27e-9
    assert err(p, sol.partial_sums[2], 0.4, 0.005) <= 10 * 1.70e-6
    assert err(p, sol.partial_sums[3], 0.4, 0.005) <= 10 * 3.55e-7


def test_p3_first_row_cascade():
    p = builtin_problem("p3")
    sol = solve(p, 3)
    errors = [err(p, sol.partial_sums[k], 0.2, 0.001) for k in (1, 2, 3)]
    for ours, printed in zip(errors, [1.05e-9, 1.59e-13, 1.95e-17]):
        assert ours <= 10 * printed or (printed < 1e-15 and ours < 1e-14)


def test_p3_boundary_value():
    p = builtin_problem("p3")
    assert abs(evaluate(solve(p, 3).approximation, 1.0, 0.009)) < 1e-12


def test_p2_approximate_column_to_nine_decimals():
    p = builtin_problem("p2")
    S3 = solve(p, 3).approximation
    assert f"{evaluate(S3, 0.5, 0.03):.9f}" == "0.000027000"


def test_ladm_comparison_error_scale():
    # the printed comparison column sits at S_1; S_2 is far below it
    p = builtin_problem("p1")
    sol = solve(p, 2, Scheme.LADM_ADOMIAN)
    e1 = err(p, sol.partial_sums[1], 0.2, 0.009)
    assert 2.46e-4 / 10 <= e1 <= 2.46e-4 * 10
    assert err(p, sol.partial_sums[2], 0.2, 0.009) < e1 / 100
