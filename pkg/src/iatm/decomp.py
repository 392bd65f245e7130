"""Series decompositions of the nonlinear term.

Given components ``u_0, u_1, ...`` the Daftardar-Jafari polynomials are the
telescoped differences

    J_0 = N(u_0),    J_j = N(u_0 + ... + u_j) - N(u_0 + ... + u_{j-1}),

so their partial sums reproduce ``N`` of the partial sum exactly.  Adomian
polynomials for a quadratic ``N(u) = B(u, u)`` are the degree-graded pieces
``P_j = sum_{i+k=j} B(u_i, u_k)``, which drop the cross terms above order ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .expr import Expression, add_all, ddx, multiply

__all__ = [
    "NonlinearOperator",
    "ADVECTION",
    "NONLINEARITIES",
    "apply_N",
    "dj_polynomial",
    "adomian_polynomial",
]

Bilinear = Callable[[Expression, Expression], Expression]


def _advect(a: Expression, b: Expression) -> Expression:
    return multiply(a, ddx(b))


@dataclass(frozen=True)
class NonlinearOperator:
    """A quadratic nonlinearity ``N(u) = form(u, u)``.

    ``form`` need not be symmetric; the advection form is ``(a, b) -> a * b_x``.
    """

    name: str
    form: Bilinear

    def __call__(self, e: Expression) -> Expression:
        return self.form(e, e)


ADVECTION = NonlinearOperator("advection", _advect)

NONLINEARITIES = {ADVECTION.name: ADVECTION}


def apply_N(op: NonlinearOperator, e: Expression) -> Expression:
    return op(e)


def _check_index(components: Sequence[Expression], j: int) -> None:
    if j < 0 or j >= len(components):
        raise IndexError(f"polynomial index {j} needs components u_0..u_{j}, have {len(components)}")


def dj_polynomial(op: NonlinearOperator, components: Sequence[Expression], j: int) -> Expression:
    _check_index(components, j)
    if j == 0:
        return op(components[0])
    upper = add_all(components[: j + 1])
    lower = add_all(components[:j])
    return add_all([op(upper), -op(lower)])


def dj_increment(op: NonlinearOperator, partial: Expression, component: Expression) -> Expression:
    """``N(partial + component) - N(partial)`` expanded through the bilinear form.

    Equal to :func:`dj_polynomial` but without forming and cancelling the
    two large products, so the result carries no cancellation noise.
    """
    return add_all([
        op.form(partial, component),
        op.form(component, partial),
        op.form(component, component),
    ])


def adomian_polynomial(op: NonlinearOperator, components: Sequence[Expression], j: int) -> Expression:
    _check_index(components, j)
    return add_all(op.form(components[i], components[j - i]) for i in range(j + 1))
