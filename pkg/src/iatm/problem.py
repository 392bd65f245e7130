"""Problem data for ``D_t^alpha u + N(u) = int_0^t (t-q)^(alpha-1) u_xx dq + f``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .decomp import ADVECTION, NonlinearOperator
from .errors import DomainError
from .expr import Expression, as_rational

__all__ = ["ProblemSpec"]


@dataclass(frozen=True)
class ProblemSpec:
    alpha: Fraction
    initial: Expression
    source: Expression
    exact: Optional[Expression] = None
    x_range: tuple[float, float] = (0.0, 1.0)
    t_max: float = 1.0
    nonlinearity: NonlinearOperator = ADVECTION
    name: str = field(default="problem", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        if not 0 < self.alpha <= 1:
            raise DomainError(f"alpha = {self.alpha} is outside (0, 1]")
        if not self.initial.is_time_independent():
            raise DomainError("the initial condition must not depend on t")
        lo, hi = self.x_range
        if not lo < hi:
            raise DomainError(f"empty spatial interval [{lo}, {hi}]")
        if self.t_max <= 0:
            raise DomainError("t_max must be positive")
