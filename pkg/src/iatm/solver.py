"""Iteration engine for the Aboodh-transform series solution.

The recursion is

    u_0 = g + I^a[f]
    u_1 = I^a[ K[u_0''] - N(u_0) ]
    u_j = I^a[ K[u_{j-1}''] - Q_{j-1} ]          (j >= 2)

where ``I^a`` is the composite ``A^-1[s**-a A[.]]``, ``K`` the Abel kernel
convolution and ``Q`` either the Daftardar-Jafari (IATM) or the Adomian
(LADM) polynomial.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .decomp import adomian_polynomial, dj_increment
from .errors import DomainError, TermCapExceeded
from .expr import Expression, add, add_all, ddxx, evaluate, scale
from .problem import ProblemSpec
from .transforms import abel_convolve, caputo_derivative, fractional_integral

__all__ = [
    "Scheme",
    "SeriesSolution",
    "DEFAULT_TERM_CAP",
    "compute_u0",
    "compute_u1",
    "compute_uj",
    "solve",
    "residual",
    "ProblemSpec",
]

log = logging.getLogger(__name__)

DEFAULT_TERM_CAP = 20_000


class Scheme(enum.Enum):
    IATM_DJ = "iatm"
    LADM_ADOMIAN = "ladm"


@dataclass(frozen=True)
class SeriesSolution:
    components: tuple[Expression, ...]
    partial_sums: tuple[Expression, ...]
    scheme: Scheme
    alpha: Fraction
    term_counts: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.components) - 1

    @property
    def approximation(self) -> Expression:
        return self.partial_sums[-1]


def _guard(e: Expression, index: int, cap: int) -> Expression:
    if len(e) > cap:
        raise TermCapExceeded(f"u_{index} has {len(e)} terms, over the cap of {cap}")
    return e


def compute_u0(p: ProblemSpec) -> Expression:
    return add(p.initial, fractional_integral(p.source, p.alpha))


def _step(p: ProblemSpec, previous: Expression, poly: Expression) -> Expression:
    memory = abel_convolve(ddxx(previous), p.alpha)
    return fractional_integral(add(memory, scale(-1.0, poly)), p.alpha)


def compute_u1(p: ProblemSpec, u0: Expression) -> Expression:
    return _step(p, u0, p.nonlinearity(u0))


def compute_uj(
    p: ProblemSpec,
    components: Sequence[Expression],
    j: int,
    scheme: Scheme,
) -> Expression:
    if j < 2:
        raise IndexError("compute_uj handles j >= 2; use compute_u0/compute_u1")
    if len(components) < j:
        raise IndexError(f"u_{j} needs u_0..u_{j - 1}, have {len(components)} components")
    comps = list(components[:j])
    if scheme is Scheme.IATM_DJ:
        poly = dj_increment(p.nonlinearity, add_all(comps[: j - 1]), comps[j - 1])
    else:
        poly = adomian_polynomial(p.nonlinearity, comps, j - 1)
    return _step(p, comps[j - 1], poly)


def solve(
    p: ProblemSpec,
    n_iterations: int,
    scheme: Scheme = Scheme.IATM_DJ,
    term_cap: int = DEFAULT_TERM_CAP,
) -> SeriesSolution:
    """Components ``u_0..u_n`` and partial sums ``S_0..S_n``."""
    if n_iterations < 0:
        raise ValueError("n_iterations must be non-negative")
    scheme = Scheme(scheme)
    components = [_guard(compute_u0(p), 0, term_cap)]
    partial = [components[0]]
    for j in range(1, n_iterations + 1):
        if j == 1:
            uj = compute_u1(p, components[0])
        else:
            uj = compute_uj(p, components, j, scheme)
        components.append(_guard(uj, j, term_cap))
        partial.append(add(partial[-1], uj))
        log.debug("u_%d: %d terms", j, len(uj))
    return SeriesSolution(
        components=tuple(components),
        partial_sums=tuple(partial),
        scheme=scheme,
        alpha=p.alpha,
        term_counts=tuple(len(c) for c in components),
    )


def pde_residual_expression(p: ProblemSpec, candidate: Expression) -> Expression:
    """``D^a u + N(u) - K[u_xx] - f`` as an expression; raises if the Caputo
    term leaves the algebra."""
    return add_all([
        caputo_derivative(candidate, p.alpha),
        p.nonlinearity(candidate),
        scale(-1.0, abel_convolve(ddxx(candidate), p.alpha)),
        scale(-1.0, p.source),
    ])


def residual(
    p: ProblemSpec,
    candidate: Expression,
    points: Sequence[tuple[float, float]],
) -> list[float]:
    """PDE residual of ``candidate`` at each ``(x, t)`` with ``t > 0``.

    The Caputo term is symbolic when possible; exponents in ``(0, alpha)``
    fall back to quadrature of the defining integral.
    """
    try:
        expr = pde_residual_expression(p, candidate)
    except DomainError:
        return _residual_by_quadrature(p, candidate, points)
    return [evaluate(expr, x, t) for x, t in points]


def _residual_by_quadrature(p, candidate, points):
    from .quadrature import caputo_at

    rest = add_all([
        p.nonlinearity(candidate),
        scale(-1.0, abel_convolve(ddxx(candidate), p.alpha)),
        scale(-1.0, p.source),
    ])
    return [caputo_at(candidate, p.alpha, x, t) + evaluate(rest, x, t) for x, t in points]
