import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from iatm.errors import DomainError
from iatm.expr import ONE, ZERO, add, constant, evaluate, multiply, sin_pi, t_power, x_power
from iatm.quadrature import abel_convolve_at, abel_quadrature, caputo_at
from iatm.transforms import (
    SDomainExpression,
    aboodh_forward,
    aboodh_inverse,
    abel_convolve,
    caputo_derivative,
    fractional_integral,
    sdomain_scale,
    time_antiderivative,
)

from .conftest import expressions

STRUCTURAL_TOL = 1e-11
alphas = st.fractions(min_value=Fraction(1, 20), max_value=1, max_denominator=20).filter(lambda a: a > 0)


def same(a, b, rtol=STRUCTURAL_TOL) -> bool:
    """Identical signatures and coefficients within ``rtol`` relative."""
    da, db = a.as_dict(), b.as_dict()
    if da.keys() != db.keys():
        return False
    return all(abs(da[k] - db[k]) <= rtol * max(abs(da[k]), abs(db[k])) for k in da)


def aboodh_numeric(f, s):
    """``(1/s) int_0^inf exp(-s t) f(t) dt`` by quadrature."""
    value, _ = quad(lambda t: math.exp(-s * t) * f(t), 0, np.inf, epsabs=0, epsrel=1e-12, limit=200)
    return value / s


# -- forward / inverse ---------------------------------------------------------


@pytest.mark.parametrize(
    "e,coefficient,g",
    [(ONE, 1.0, 2), (t_power(1), 1.0, 3), (multiply(t_power(3), sin_pi(1)), 6.0, 5)],
)
def test_forward_examples(e, coefficient, g):
    S = aboodh_forward(e)
    (term,) = S.terms
    assert term.sexponent == g and abs(term.coefficient - coefficient) < 1e-14


@pytest.mark.parametrize("beta", [0, Fraction(1, 2), 1, Fraction(5, 2), 3])
def test_forward_matches_defining_integral(beta):
    s = 2.0
    S = aboodh_forward(t_power(beta))
    assert abs(S.evaluate(0.0, s) - aboodh_numeric(lambda t: t ** float(beta), s)) < 1e-10


def test_forward_of_mixed_term_by_quadrature():
    S = aboodh_forward(multiply(t_power(3), sin_pi(1)))
    assert abs(S.evaluate(0.5, 2.0) - 6 / 2**5) < 1e-15
    assert abs(aboodh_numeric(lambda t: t**3, 2.0) - 6 / 2**5) < 1e-12


def test_inverse_example_and_domain():
    S = SDomainExpression({(Fraction(5), 0, 0, 0): 6.0})
    assert same(aboodh_inverse(S), t_power(3))
    bad = SDomainExpression({(Fraction(3, 2), 0, 0, 0): 1.0})
    with pytest.raises(DomainError):
        aboodh_inverse(bad)


def test_sdomain_scale():
    S = aboodh_forward(ONE)
    assert sdomain_scale(S, 1).exponents() == {3}
    with pytest.raises(DomainError):
        sdomain_scale(S, 0)


@settings(max_examples=200)
@given(expressions(max_terms=5))
def test_round_trip(e):
    assert same(aboodh_inverse(aboodh_forward(e)), e)


@settings(max_examples=200)
@given(expressions(max_terms=5), alphas)
def test_pipeline_equals_fractional_integral(e, a):
    piped = aboodh_inverse(sdomain_scale(aboodh_forward(e), a))
    assert same(piped, fractional_integral(e, a))


@settings(max_examples=200)
@given(expressions(max_terms=4), alphas, alphas)
def test_semigroup(e, a, b):
    assert same(fractional_integral(fractional_integral(e, a), b), fractional_integral(e, a + b))


@settings(max_examples=200)
@given(expressions(max_terms=5), alphas)
def test_caputo_inverts_integral(e, a):
    assert same(caputo_derivative(fractional_integral(e, a), a), e)


# -- closed forms against quadrature --------------------------------------------


def test_half_integral_of_sqrt():
    got = fractional_integral(t_power(Fraction(1, 2)), Fraction(1, 2))
    (term,) = got.terms
    assert term.texponent == 1 and abs(term.coefficient - math.sqrt(math.pi) / 2) < 1e-15
    ref = abel_quadrature(lambda q: 1.0, Fraction(1, 2), 1.0, lead=0.5) / math.gamma(0.5)
    assert abs(ref - math.sqrt(math.pi) / 2) < 1e-12


def test_integer_order_cases():
    assert same(fractional_integral(t_power(1), 1), t_power(2, 0.5))
    assert same(abel_convolve(t_power(3), 1), t_power(4, 0.25))
    assert same(time_antiderivative(t_power(3)), t_power(4, 0.25))


def test_abel_half_of_cubic():
    got = abel_convolve(multiply(t_power(3), sin_pi(1)), Fraction(1, 2))
    (term,) = got.terms
    assert term.texponent == Fraction(7, 2) and abs(term.coefficient - 32 / 35) < 1e-14
    ref, _ = quad(lambda q: q**3, 0, 1, weight="alg", wvar=(0, -0.5))
    assert abs(ref - 32 / 35) < 1e-12


def test_caputo_half_of_t():
    got = caputo_derivative(t_power(1), Fraction(1, 2))
    assert abs(evaluate(got, 0, 1.0) - 2 / math.sqrt(math.pi)) < 1e-15
    assert abs(caputo_at(t_power(1), Fraction(1, 2), 0.0, 1.0) - 2 / math.sqrt(math.pi)) < 1e-12


def test_caputo_domain():
    assert caputo_derivative(constant(3.0), Fraction(1, 2)) == ZERO
    with pytest.raises(DomainError):
        caputo_derivative(t_power(Fraction(1, 4)), Fraction(1, 2))
    with pytest.raises(DomainError):
        caputo_derivative(t_power(1), Fraction(3, 2))


def test_negative_orders_rejected():
    with pytest.raises(DomainError):
        fractional_integral(t_power(1), 0)
    with pytest.raises(DomainError):
        abel_convolve(t_power(1), Fraction(-1, 2))


def _singular_cases(n=20, seed=7):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        a = Fraction(int(rng.integers(1, 20)), 20)  # kernel exponent a - 1 in (-1, 0)
        b = Fraction(int(rng.integers(0, 12)), 4)
        k = int(rng.integers(1, 4))
        e = add(multiply(t_power(b, float(rng.uniform(-2, 2))), sin_pi(k)),
                multiply(t_power(b + Fraction(1, 2), 1.3), x_power(2)))
        yield e, a, float(rng.uniform(0, 1)), float(rng.uniform(0.01, 1))


@pytest.mark.parametrize("case", list(_singular_cases()), ids=lambda c: f"a={c[1]}")
def test_abel_against_quadrature(case):
    e, a, x, t = case
    ref = abel_convolve_at(e, a, x, t)
    got = evaluate(abel_convolve(e, a), x, t)
    assert abs(got - ref) <= 1e-8 * abs(ref)


@pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(7, 10), Fraction(1)])
def test_caputo_against_quadrature(a):
    e = add(t_power(Fraction(5, 2)), multiply(t_power(3), x_power(2)))
    assert abs(caputo_at(e, a, 0.3, 0.7) - evaluate(caputo_derivative(e, a), 0.3, 0.7)) < 1e-12


def test_abel_quadrature_generic_integrand():
    # smooth integrand handled through the weight only
    ref = abel_quadrature(math.cos, Fraction(1, 3), 0.8)
    direct, _ = quad(lambda q: (0.8 - q) ** (-2 / 3) * math.cos(q), 0, 0.8, limit=400)
    assert abs(ref - direct) < 1e-7
