"""Canonical term algebra for separable closed forms in ``x`` and ``t``.

Every expression is a finite sum of terms

    coefficient * x**m * trig(k*pi*x) * t**beta

where ``trig`` is 1, ``sin`` or ``cos`` and ``beta`` is an exact
non-negative rational.  Products of trig factors are folded back into the
algebra with the product-to-sum identities, so the set is closed under
``+``, ``*`` and ``d/dx``.

Polynomials in ``x`` are stored monomial by monomial, so each term has the
exact signature ``(beta, kind, k, m)`` and like terms merge without any
tolerance.  Terms live in parallel numpy arrays; exponents are integer
numerators over one shared denominator per expression.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "TrigKind",
    "TrigFactor",
    "XPolynomial",
    "Term",
    "Expression",
    "ZERO",
    "ONE",
    "CANCELLATION_RTOL",
    "add",
    "add_all",
    "scale",
    "multiply",
    "ddx",
    "ddxx",
    "evaluate",
    "evaluate_many",
    "structurally_equal",
    "constant",
    "x_power",
    "t_power",
    "sin_pi",
    "cos_pi",
    "polynomial",
    "as_rational",
]

#: A merged coefficient is dropped when it is this small relative to the sum
#: of the magnitudes that went into it (floating-point cancellation dust).
CANCELLATION_RTOL = 1e-14

_UNIT, _SIN, _COS = 0, 1, 2


class TrigKind(enum.IntEnum):
    UNIT = _UNIT
    SIN = _SIN
    COS = _COS


@dataclass(frozen=True, order=True)
class TrigFactor:
    """``1``, ``sin(k pi x)`` or ``cos(k pi x)``."""

    kind: TrigKind = TrigKind.UNIT
    harmonic: int = 0

    def __post_init__(self) -> None:
        if self.harmonic < 0:
            raise ValueError("harmonic must be non-negative")
        if self.kind == TrigKind.UNIT and self.harmonic != 0:
            raise ValueError("a unit factor has harmonic 0")
        if self.kind != TrigKind.UNIT and self.harmonic == 0:
            raise ValueError("sin(0) and cos(0) must be rewritten before construction")

    def __call__(self, x: float) -> float:
        if self.kind == TrigKind.UNIT:
            return 1.0
        arg = self.harmonic * math.pi * x
        return math.sin(arg) if self.kind == TrigKind.SIN else math.cos(arg)


UNIT = TrigFactor()


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exponents must be exact rationals, got {value!r}")


class XPolynomial(tuple):
    """Dense polynomial in ``x``; index is the power, trailing zeros stripped."""

    def __new__(cls, coefficients: Iterable[float] = ()):
        coeffs = [float(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0.0:
            coeffs.pop()
        return super().__new__(cls, coeffs)

    @property
    def degree(self) -> int:
        return len(self) - 1

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class Term:
    """One addend ``coefficient * x**xpower * trig * t**texponent``."""

    coefficient: float
    xpower: int = 0
    trig: TrigFactor = UNIT
    texponent: Fraction = Fraction(0)

    @property
    def signature(self) -> tuple:
        return (self.texponent, int(self.trig.kind), self.trig.harmonic, self.xpower)

    @property
    def xpoly(self) -> XPolynomial:
        return XPolynomial([0.0] * self.xpower + [1.0])


_I64 = np.int64
_EMPTY_I = np.zeros(0, dtype=_I64)
_EMPTY_F = np.zeros(0, dtype=np.float64)


def _canonical(num, den, kind, h, m, c, mag=None):
    """Sort, merge like terms, drop cancellation dust; returns canonical arrays."""
    if mag is None:
        mag = np.abs(c)
    keep = c != 0.0
    if not keep.all():
        num, kind, h, m, c, mag = num[keep], kind[keep], h[keep], m[keep], c[keep], mag[keep]
    if num.size == 0:
        return _EMPTY_I, 1, _EMPTY_I, _EMPTY_I, _EMPTY_I, _EMPTY_F
    order = np.lexsort((m, h, kind, num))
    num, kind, h, m, c, mag = num[order], kind[order], h[order], m[order], c[order], mag[order]
    if num.size > 1:
        new = np.empty(num.size, dtype=bool)
        new[0] = True
        new[1:] = (
            (num[1:] != num[:-1]) | (kind[1:] != kind[:-1]) | (h[1:] != h[:-1]) | (m[1:] != m[:-1])
        )
        if not new.all():
            starts = np.flatnonzero(new)
            c = np.add.reduceat(c, starts)
            mag = np.add.reduceat(mag, starts)
            num, kind, h, m = num[starts], kind[starts], h[starts], m[starts]
            keep = np.abs(c) > CANCELLATION_RTOL * mag
            if not keep.all():
                num, kind, h, m, c = num[keep], kind[keep], h[keep], m[keep], c[keep]
    if num.size == 0:
        return _EMPTY_I, 1, _EMPTY_I, _EMPTY_I, _EMPTY_I, _EMPTY_F
    g = math.gcd(int(den), *(int(v) for v in np.unique(num)))
    if g > 1:
        num = num // g
        den = den // g
    return num, int(den), kind, h, m, c


class _TermArrays:
    """Shared storage: canonical sorted arrays with an exact rational exponent."""

    __slots__ = ("_num", "_den", "_kind", "_h", "_m", "_c", "_hash")

    def __init__(self, terms: Iterable | Mapping[tuple, float] = ()):
        if isinstance(terms, Mapping):
            pairs = list(terms.items())
        else:
            pairs = [self._term_pair(t) for t in terms]
        exps = [as_rational(sig[0]) for sig, _ in pairs]
        den = math.lcm(1, *(e.denominator for e in exps))
        self._set(*_canonical(
            np.array([e.numerator * (den // e.denominator) for e in exps], dtype=_I64),
            den,
            np.array([int(sig[1]) for sig, _ in pairs], dtype=_I64),
            np.array([int(sig[2]) for sig, _ in pairs], dtype=_I64),
            np.array([int(sig[3]) for sig, _ in pairs], dtype=_I64),
            np.array([float(c) for _, c in pairs], dtype=np.float64),
        ))

    @staticmethod
    def _term_pair(term):
        raise NotImplementedError

    def _set(self, num, den, kind, h, m, c):
        self._num, self._den, self._kind, self._h, self._m, self._c = num, den, kind, h, m, c
        self._hash = None

    @classmethod
    def _make(cls, num, den, kind, h, m, c, mag=None):
        obj = cls.__new__(cls)
        obj._set(*_canonical(num, den, kind, h, m, c, mag))
        return obj

    @classmethod
    def _raw(cls, num, den, kind, h, m, c):
        obj = cls.__new__(cls)
        obj._set(num, den, kind, h, m, c)
        return obj

    def _exponent_values(self) -> list[Fraction]:
        return [Fraction(int(n), self._den) for n in self._num]

    def items(self) -> Iterator[tuple[tuple, float]]:
        den = self._den
        for n, k, h, m, c in zip(self._num.tolist(), self._kind.tolist(), self._h.tolist(),
                                 self._m.tolist(), self._c.tolist()):
            yield (Fraction(n, den), k, h, m), c

    def as_dict(self) -> dict[tuple, float]:
        return dict(self.items())

    def exponents(self) -> set[Fraction]:
        return {Fraction(int(n), self._den) for n in np.unique(self._num)}

    def map_exponents(self, shift: Fraction, weight: Callable[[Fraction], float], cls=None):
        """New exponent ``e + shift``; coefficient times ``weight(e)`` (once per distinct ``e``)."""
        cls = cls or type(self)
        shift = as_rational(shift)
        if self._c.size == 0:
            return cls._raw(_EMPTY_I, 1, _EMPTY_I, _EMPTY_I, _EMPTY_I, _EMPTY_F)
        den = math.lcm(self._den, shift.denominator)
        num = self._num * (den // self._den)
        uniq, inverse = np.unique(num, return_inverse=True)
        w = np.array([weight(Fraction(int(u), den)) for u in uniq], dtype=np.float64)
        new_num = num + shift.numerator * (den // shift.denominator)
        return cls._make(new_num, den, self._kind, self._h, self._m, self._c * w[inverse])

    def __len__(self) -> int:
        return int(self._c.size)

    def __bool__(self) -> bool:
        return self._c.size > 0

    def is_zero(self) -> bool:
        return self._c.size == 0

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return (
            self._den == other._den
            and np.array_equal(self._num, other._num)
            and np.array_equal(self._kind, other._kind)
            and np.array_equal(self._h, other._h)
            and np.array_equal(self._m, other._m)
            and np.array_equal(self._c, other._c)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._den, self._num.tobytes(), self._kind.tobytes(),
                               self._h.tobytes(), self._m.tobytes(), self._c.tobytes()))
        return self._hash


class Expression(_TermArrays):
    """Immutable canonical sum of :class:`Term` values."""

    __slots__ = ()

    @staticmethod
    def _term_pair(term):
        return term.signature, term.coefficient

    @property
    def terms(self) -> tuple[Term, ...]:
        return tuple(
            Term(c, m, TrigFactor(TrigKind(k), h), beta) for (beta, k, h, m), c in self.items()
        )

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    def texponents(self) -> set[Fraction]:
        return self.exponents()

    def max_harmonic(self) -> int:
        return int(self._h.max()) if self._h.size else 0

    def is_time_independent(self) -> bool:
        return not self._num.any()

    # -- operators -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = constant(other)
        if not isinstance(other, Expression):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return scale(-1.0, self)

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = constant(other)
        if not isinstance(other, Expression):
            return NotImplemented
        return add(self, scale(-1.0, other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return scale(other, self)
        if not isinstance(other, Expression):
            return NotImplemented
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Expression":
        if not isinstance(n, int) or n < 0:
            raise DomainError("only non-negative integer powers stay in the algebra")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = multiply(result, base)
            n >>= 1
            if n:
                base = multiply(base, base)
        return result

    def __call__(self, x: float, t: float) -> float:
        return evaluate(self, x, t)

    __hash__ = _TermArrays.__hash__

    def __repr__(self) -> str:
        return f"Expression({str(self)!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(_format_term(t) for t in self.terms).replace("+ -", "- ")


def _format_term(term: Term) -> str:
    parts = [repr(abs(term.coefficient))]
    if term.xpower == 1:
        parts.append("x")
    elif term.xpower > 1:
        parts.append(f"x^{term.xpower}")
    if term.trig.kind != TrigKind.UNIT:
        name = "sin" if term.trig.kind == TrigKind.SIN else "cos"
        parts.append(f"{name}({term.trig.harmonic}*pi*x)")
    beta = term.texponent
    if beta == 1:
        parts.append("t")
    elif beta.denominator == 1 and beta != 0:
        parts.append(f"t^{beta.numerator}")
    elif beta != 0:
        parts.append(f"t^({beta.numerator}/{beta.denominator})")
    text = "*".join(parts)
    return f"-{text}" if term.coefficient < 0 else text


ZERO = Expression()


def constant(c: float) -> Expression:
    return Expression([Term(float(c))])


ONE = constant(1.0)


def x_power(m: int, coefficient: float = 1.0) -> Expression:
    return Expression([Term(coefficient, m)])


def t_power(beta, coefficient: float = 1.0) -> Expression:
    beta = as_rational(beta)
    if beta < 0:
        raise DomainError(f"negative time exponent {beta}")
    return Expression([Term(coefficient, 0, UNIT, beta)])


def sin_pi(k: int, coefficient: float = 1.0) -> Expression:
    """``coefficient * sin(k pi x)``; negative ``k`` flips the sign."""
    if k == 0:
        return ZERO
    sign = -1.0 if k < 0 else 1.0
    return Expression([Term(sign * coefficient, 0, TrigFactor(TrigKind.SIN, abs(k)))])


def cos_pi(k: int, coefficient: float = 1.0) -> Expression:
    if k == 0:
        return constant(coefficient)
    return Expression([Term(coefficient, 0, TrigFactor(TrigKind.COS, abs(k)))])


def polynomial(coefficients: Sequence[float]) -> Expression:
    """Expression for ``sum(c_m x**m)``."""
    return Expression([Term(c, m) for m, c in enumerate(coefficients)])


# -- algebra -------------------------------------------------------------------


def _rescaled(e: _TermArrays, den: int) -> np.ndarray:
    return e._num if e._den == den else e._num * (den // e._den)


def add_all(expressions: Iterable[Expression]) -> Expression:
    exprs = [e for e in expressions if not e.is_zero()]
    if not exprs:
        return ZERO
    if len(exprs) == 1:
        return exprs[0]
    den = math.lcm(*(e._den for e in exprs))
    return Expression._make(
        np.concatenate([_rescaled(e, den) for e in exprs]),
        den,
        np.concatenate([e._kind for e in exprs]),
        np.concatenate([e._h for e in exprs]),
        np.concatenate([e._m for e in exprs]),
        np.concatenate([e._c for e in exprs]),
    )


def add(a: Expression, b: Expression) -> Expression:
    return add_all((a, b))


def scale(c: float, e: Expression) -> Expression:
    c = float(c)
    if c == 0.0 or e.is_zero():
        return ZERO
    if c == 1.0:
        return e
    return Expression._raw(e._num, e._den, e._kind, e._h, e._m, e._c * c)


def multiply(a: Expression, b: Expression) -> Expression:
    """Distribute, add exponents, and fold trig products with product-to-sum."""
    if a.is_zero() or b.is_zero():
        return ZERO
    den = math.lcm(a._den, b._den)
    na, nb = _rescaled(a, den), _rescaled(b, den)
    num = (na[:, None] + nb[None, :]).ravel()
    m = (a._m[:, None] + b._m[None, :]).ravel()
    c = (a._c[:, None] * b._c[None, :]).ravel()
    ka = np.broadcast_to(a._kind[:, None], (a._c.size, b._c.size)).ravel()
    kb = np.broadcast_to(b._kind[None, :], (a._c.size, b._c.size)).ravel()
    p = np.broadcast_to(a._h[:, None], (a._c.size, b._c.size)).ravel()
    q = np.broadcast_to(b._h[None, :], (a._c.size, b._c.size)).ravel()

    a_unit = ka == _UNIT
    b_unit = kb == _UNIT
    both = ~(a_unit | b_unit)
    ss = both & (ka == _SIN) & (kb == _SIN)
    cs = both & (ka == _COS) & (kb == _SIN)

    # slot 1: the difference angle (or the surviving factor when one side is 1)
    kind1 = np.where(both, np.where((ka == kb), _COS, _SIN), np.where(a_unit, kb, ka))
    h1 = np.where(both, np.where(cs, q - p, p - q), np.where(a_unit, q, p))
    w1 = np.where(both, 0.5, 1.0)
    # slot 2: the sum angle; unused when one side is 1
    kind2 = kind1
    h2 = p + q
    w2 = np.where(both, np.where(ss, -0.5, 0.5), 0.0)

    kind = np.concatenate([kind1, kind2])
    h = np.concatenate([h1, h2])
    w = np.concatenate([w1, w2])
    num = np.concatenate([num, num])
    m = np.concatenate([m, m])
    c = np.concatenate([c, c]) * w

    neg = h < 0
    if neg.any():
        c = np.where(neg & (kind == _SIN), -c, c)
        h = np.abs(h)
    zero_h = (h == 0) & (kind != _UNIT)
    if zero_h.any():
        c = np.where(zero_h & (kind == _SIN), 0.0, c)
        kind = np.where(zero_h, _UNIT, kind)
    return Expression._make(num, den, kind, h, m, c)


def ddx(e: Expression) -> Expression:
    """Exact ``d/dx``: product rule across the monomial and the trig factor."""
    if e.is_zero():
        return ZERO
    poly = e._m > 0
    trig = e._kind != _UNIT
    swapped = np.where(e._kind == _SIN, _COS, _SIN)
    dtrig = np.where(e._kind == _SIN, 1.0, -1.0) * e._h * math.pi
    return Expression._make(
        np.concatenate([e._num[poly], e._num[trig]]),
        e._den,
        np.concatenate([e._kind[poly], swapped[trig]]),
        np.concatenate([e._h[poly], e._h[trig]]),
        np.concatenate([e._m[poly] - 1, e._m[trig]]),
        np.concatenate([e._c[poly] * e._m[poly], e._c[trig] * dtrig[trig]]),
    )


def ddxx(e: Expression) -> Expression:
    return ddx(ddx(e))


def _check_t(e: Expression, t) -> None:
    if np.any(np.asarray(t) < 0) and np.any(e._num % e._den != 0):
        raise DomainError("fractional powers of negative t are undefined")


def _term_values(e: Expression, x, t) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)[..., None]
    t = np.asarray(t, dtype=np.float64)[..., None]
    arg = e._h * math.pi * x
    trig = np.where(e._kind == _SIN, np.sin(arg), np.where(e._kind == _COS, np.cos(arg), 1.0))
    beta = e._num / e._den
    # 0**0 == 1 keeps the t-independent part alive at t = 0
    return e._c * x**e._m * trig * t**beta


def evaluate(e: Expression, x: float, t: float) -> float:
    """Pointwise value; ``0**0`` is taken as 1 so ``u(x, 0)`` keeps its constant part."""
    if e.is_zero():
        return 0.0
    _check_t(e, t)
    return math.fsum(_term_values(e, x, t).tolist())


def evaluate_many(e: Expression, xs, ts) -> np.ndarray:
    """Vectorised :func:`evaluate` over broadcastable arrays of points."""
    xs, ts = np.broadcast_arrays(np.asarray(xs, dtype=np.float64), np.asarray(ts, dtype=np.float64))
    if e.is_zero():
        return np.zeros(xs.shape)
    _check_t(e, ts)
    values = _term_values(e, xs, ts)
    return np.array([math.fsum(row) for row in values.reshape(-1, values.shape[-1]).tolist()]).reshape(xs.shape)


def structurally_equal(a: Expression, b: Expression, tol: float = 0.0) -> bool:
    """Same term signatures, coefficients within ``tol`` absolute."""
    if len(a) != len(b):
        return False
    if a.is_zero():
        return True
    if a._den != b._den:
        return False
    same = (
        np.array_equal(a._num, b._num)
        and np.array_equal(a._kind, b._kind)
        and np.array_equal(a._h, b._h)
        and np.array_equal(a._m, b._m)
    )
    return bool(same and np.all(np.abs(a._c - b._c) <= tol))
