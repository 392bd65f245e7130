"""Aboodh transform pair and the fractional operators built on it.

All operators act term-wise on :class:`~iatm.expr.Expression`.  The forward
transform sends ``t**beta`` to ``Gamma(beta+1) s**-(beta+2)`` and the inverse
undoes it, so the solver's composite ``A^-1[s**-alpha A[.]]`` is the
Riemann-Liouville integral.  Both routes are kept so they can be checked
against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .expr import (
    Expression,
    TrigFactor,
    TrigKind,
    _TermArrays,
    as_rational,
)
from .gamma import gamma, gamma_ratio

__all__ = [
    "SDomainTerm",
    "SDomainExpression",
    "aboodh_forward",
    "aboodh_inverse",
    "sdomain_scale",
    "fractional_integral",
    "abel_convolve",
    "caputo_derivative",
    "time_antiderivative",
]


@dataclass(frozen=True)
class SDomainTerm:
    """``coefficient * xpart * s**-sexponent``."""

    coefficient: float
    xpower: int
    trig: TrigFactor
    sexponent: Fraction


class SDomainExpression(_TermArrays):
    """Canonical sum of :class:`SDomainTerm`; signatures ``(gamma, kind, k, m)``."""

    __slots__ = ()

    @staticmethod
    def _term_pair(term):
        return (term.sexponent, int(term.trig.kind), term.trig.harmonic, term.xpower), term.coefficient

    @property
    def terms(self) -> tuple[SDomainTerm, ...]:
        return tuple(
            SDomainTerm(c, m, TrigFactor(TrigKind(k), h), g) for (g, k, h, m), c in self.items()
        )

    __hash__ = _TermArrays.__hash__

    def __repr__(self) -> str:
        body = " + ".join(f"{c!r}*[{k},{h},x^{m}]*s^-({g})" for (g, k, h, m), c in self.items())
        return f"SDomainExpression({body or '0'})"

    def evaluate(self, x: float, s: float) -> float:
        return sum(
            c * x**m * TrigFactor(TrigKind(k), h)(x) * s ** (-float(g))
            for (g, k, h, m), c in self.items()
        )


def _nonnegative(e: Expression) -> None:
    if e and e._num.min() < 0:
        raise DomainError("time exponents must be non-negative")


def aboodh_forward(e: Expression) -> SDomainExpression:
    """``A[t**beta] = Gamma(beta+1) s**-(beta+2)``, x-part untouched."""
    _nonnegative(e)
    return e.map_exponents(Fraction(2), lambda beta: gamma(beta + 1), cls=SDomainExpression)


def aboodh_inverse(S: SDomainExpression) -> Expression:
    """``A^-1[s**-g] = t**(g-2) / Gamma(g-1)``; needs every ``g >= 2``."""
    if S and min(S.exponents()) < 2:
        raise DomainError("s-exponents below 2 have no preimage with a non-negative time exponent")
    return S.map_exponents(Fraction(-2), lambda g: 1.0 / gamma(g - 1), cls=Expression)


def sdomain_scale(S: SDomainExpression, alpha) -> SDomainExpression:
    """Multiply by ``s**-alpha``."""
    alpha = as_rational(alpha)
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    return S.map_exponents(alpha, lambda g: 1.0)


def _positive(alpha) -> Fraction:
    alpha = as_rational(alpha)
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    return alpha


def fractional_integral(e: Expression, alpha) -> Expression:
    r"""Riemann-Liouville integral of order ``alpha``.

    .. math::

        I^\alpha[t^\beta] = \frac{\Gamma(\beta+1)}{\Gamma(\alpha+\beta+1)} t^{\alpha+\beta}
    """
    alpha = _positive(alpha)
    _nonnegative(e)
    return e.map_exponents(alpha, lambda beta: gamma_ratio(beta + 1, beta + alpha + 1))


def abel_convolve(e: Expression, alpha) -> Expression:
    """``int_0^t (t-q)**(alpha-1) e(x, q) dq`` = ``Gamma(alpha) I^alpha[e]``."""
    alpha = _positive(alpha)
    _nonnegative(e)
    g = gamma(alpha)
    return e.map_exponents(alpha, lambda beta: g * gamma_ratio(beta + 1, beta + alpha + 1))


def caputo_derivative(e: Expression, alpha) -> Expression:
    """Caputo derivative of order ``0 < alpha <= 1`` in ``t``.

    Constants vanish.  A term ``t**beta`` with ``0 < beta < alpha`` would leave
    the algebra (negative exponent) and raises :class:`DomainError`.
    """
    alpha = as_rational(alpha)
    if not 0 < alpha <= 1:
        raise DomainError("Caputo order must lie in (0, 1]")
    bad = [b for b in e.texponents() if 0 < b < alpha]
    if bad:
        raise DomainError(f"D^{alpha} of t^{min(bad)} is singular at t = 0")
    moving = Expression({sig: c for sig, c in e.items() if sig[0] != 0})
    return moving.map_exponents(-alpha, lambda beta: gamma_ratio(beta + 1, beta + 1 - alpha))


def time_antiderivative(e: Expression) -> Expression:
    """Plain ``int_0^t e dq`` via the power rule; the ``alpha = 1`` reference."""
    return e.map_exponents(Fraction(1), lambda beta: 1.0 / float(beta + 1))
