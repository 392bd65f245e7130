"""Lanczos approximation of the gamma function.

Every kernel weight in the solver is a ratio of gamma values, so this module
sets the precision floor for the whole package.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

__all__ = ["gamma", "gamma_ratio"]

_G = 7.0
_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _lanczos(z: float) -> float:
    # valid for z >= 0.5
    z -= 1.0
    acc = _COEFFICIENTS[0]
    for i, c in enumerate(_COEFFICIENTS[1:], start=1):
        acc += c / (z + i)
    base = z + _G + 0.5
    # split the power so large arguments do not overflow before exp() shrinks them
    half = base ** ((z + 0.5) / 2.0)
    return _SQRT_2PI * half * (half * math.exp(-base)) * acc


def gamma(z: float) -> float:
    """Gamma function for real ``z``, excluding the non-positive integers.

    Negative non-integer arguments go through the reflection formula
    ``Gamma(z) Gamma(1 - z) = pi / sin(pi z)``.
    """
    z = float(z)
    if z <= 0.0 and z == math.floor(z):
        raise DomainError(f"gamma is undefined at the non-positive integer {z:g}")
    if z < 0.5:
        return math.pi / (math.sin(math.pi * z) * _lanczos(1.0 - z))
    return _lanczos(z)


@lru_cache(maxsize=None)
def _gamma_exact(z: Fraction) -> float:
    return gamma(z)


def gamma_ratio(num: Fraction, den: Fraction) -> float:
    """``Gamma(num) / Gamma(den)`` for rational arguments, cached."""
    return _gamma_exact(Fraction(num)) / _gamma_exact(Fraction(den))
