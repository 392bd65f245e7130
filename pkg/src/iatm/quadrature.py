"""Numerical reference values for the singular time integrals.

Independent of the closed-form gamma-ratio rules: integrals are done by
adaptive quadrature with the algebraic endpoint weights handled by QUADPACK.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from scipy.integrate import quad

from .errors import DomainError
from .expr import Expression, as_rational, evaluate

__all__ = ["abel_quadrature", "abel_convolve_at", "caputo_at", "time_derivative"]


def abel_quadrature(f: Callable[[float], float], alpha, t: float, *, lead: float = 0.0) -> float:
    """``int_0^t (t-q)**(alpha-1) f(q) dq``.

    ``lead`` declares a ``q**lead`` factor (``lead > -1``) that ``f`` has
    already been divided by, so the endpoint singularity goes into the weight.
    """
    a = float(alpha)
    if t <= 0:
        return 0.0
    value, _ = quad(f, 0.0, t, weight="alg", wvar=(lead, a - 1.0), epsabs=0.0, epsrel=1e-13, limit=200)
    return value


def _by_exponent(e: Expression) -> dict[Fraction, Expression]:
    groups: dict[Fraction, dict] = {}
    for sig, c in e.items():
        groups.setdefault(sig[0], {})[(Fraction(0),) + sig[1:]] = c
    return {beta: Expression(part) for beta, part in groups.items()}


def abel_convolve_at(e: Expression, alpha, x: float, t: float) -> float:
    """Quadrature value of ``int_0^t (t-q)**(alpha-1) e(x, q) dq``."""
    if as_rational(alpha) <= 0:
        raise DomainError("alpha must be positive")
    total = 0.0
    for beta, xpart in _by_exponent(e).items():
        # q**beta sits in the weight, the rest is constant in q
        cx = evaluate(xpart, x, 0.0)
        total += cx * abel_quadrature(lambda q: 1.0, alpha, t, lead=float(beta))
    return total


def time_derivative(e: Expression) -> Expression:
    """Power rule in ``t``; constants drop out."""
    return Expression({(sig[0] - 1,) + sig[1:]: c * float(sig[0]) for sig, c in e.items() if sig[0] != 0})


def caputo_at(e: Expression, alpha, x: float, t: float) -> float:
    """Caputo derivative of order ``0 < alpha <= 1`` at one point, by quadrature."""
    a = as_rational(alpha)
    if not 0 < a <= 1:
        raise DomainError("Caputo order must lie in (0, 1]")
    de = time_derivative(e)
    if a == 1:
        return evaluate(de, x, t)
    return abel_convolve_at(de, 1 - a, x, t) / math.gamma(float(1 - a))
