"""Text front end: an infix expression language and a key/value problem format.

Expressions::

    expr     := term (('+'|'-') term)*
    term     := factor (('*'|'/') factor)*
    factor   := base ('^' exponent)?
    base     := number | 'pi' | 'alpha' | 'x' | 't' | call | '(' expr ')' | '-' factor
    call     := ('sin'|'cos'|'gamma') '(' expr ')'
    exponent := '(' expr ')' | number | '-' exponent

Division is only by constants.  ``alpha`` is substituted while parsing, and
numbers are read exactly, so ``t^(5/2-alpha)`` keeps a rational exponent.

Problem documents are ``key = value`` lines with ``#`` comments; a trailing
backslash continues a value on the next line.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .decomp import NONLINEARITIES
from .errors import DomainError, ParseDomainError, ParseError
from .expr import Expression, TrigKind, constant, cos_pi, scale, sin_pi, t_power, x_power, multiply, add
from .gamma import gamma
from .problem import ProblemSpec

__all__ = ["ParseEnvironment", "SourceText", "parse_expression", "parse_problem", "parse_rational"]

_MAX_DEPTH = 200
_MAX_INT_POWER = 64

Value = Union[Fraction, float, Expression]


@dataclass(frozen=True)
class ParseEnvironment:
    alpha: Fraction = Fraction(1)
    constants: Mapping[str, float] = field(default_factory=lambda: {"pi": math.pi})

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if not 0 < self.alpha <= 1:
            raise DomainError(f"alpha = {self.alpha} is outside (0, 1]")


@dataclass(frozen=True)
class SourceText:
    raw: str
    origin: str = "<inline>"
    line: int = 1
    column: int = 1


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(src: SourceText) -> list[_Token]:
    out = []
    pos = 0
    raw = src.raw
    while pos < len(raw):
        m = _TOKEN.match(raw, pos)
        if m is None:
            line, col = _where(src, pos)
            raise ParseError(f"unexpected character {raw[pos]!r}", line, col, src.origin)
        if m.lastgroup != "ws":
            out.append(_Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(_Token("end", "", len(raw)))
    return out


def _where(src: SourceText, pos: int) -> tuple[int, int]:
    before = src.raw[:pos]
    line = before.count("\n")
    if line:
        return src.line + line, pos - before.rfind("\n")
    return src.line, src.column + pos


class _Parser:
    def __init__(self, src: SourceText, env: ParseEnvironment):
        self.src = src
        self.env = env
        self.tokens = _tokenize(src)
        self.i = 0
        self.depth = 0

    # -- helpers -------------------------------------------------------------

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: _Token | None = None, domain: bool = False):
        line, col = _where(self.src, (tok or self.tok).pos)
        cls = ParseDomainError if domain else ParseError
        return cls(message, line, col, self.src.origin)

    def expect(self, text: str) -> _Token:
        tok = self.tok
        if tok.text != text or tok.kind == "end":
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        self.i += 1
        return tok

    def enter(self) -> None:
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise self.error("expression nested too deeply")

    # -- grammar -------------------------------------------------------------

    def parse(self) -> Expression:
        value = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return _as_expression(value)

    def expr(self) -> Value:
        self.enter()
        value = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.tok
            self.i += 1
            rhs = self.term()
            value = self.combine(op, value, rhs)
        self.depth -= 1
        return value

    def term(self) -> Value:
        value = self.factor()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op = self.tok
            self.i += 1
            rhs = self.factor()
            value = self.combine(op, value, rhs)
        return value

    def factor(self) -> Value:
        base_tok = self.tok
        value = self.base()
        if self.tok.text == "^" and self.tok.kind == "op":
            op = self.tok
            self.i += 1
            exponent = self.exponent()
            value = self.power(op, base_tok, value, exponent)
        return value

    def exponent(self) -> Value:
        tok = self.tok
        if tok.text == "(":
            self.i += 1
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "number":
            self.i += 1
            return Fraction(tok.text)
        if tok.text == "-":
            self.i += 1
            self.enter()
            value = self.exponent()
            self.depth -= 1
            return -value if not isinstance(value, Expression) else scale(-1.0, value)
        if tok.kind == "name" and tok.text == "alpha":
            self.i += 1
            return self.env.alpha
        raise self.error("expected a number or a parenthesised exponent")

    def base(self) -> Value:
        tok = self.tok
        if tok.kind == "number":
            self.i += 1
            return Fraction(tok.text)
        if tok.text == "(":
            self.i += 1
            value = self.expr()
            self.expect(")")
            return value
        if tok.text == "-" and tok.kind == "op":
            self.i += 1
            self.enter()
            value = self.factor()
            self.depth -= 1
            return scale(-1.0, value) if isinstance(value, Expression) else -value
        if tok.kind == "name":
            self.i += 1
            name = tok.text
            if name in ("sin", "cos", "gamma"):
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return self.call(name, tok, arg)
            if name == "x":
                return x_power(1)
            if name == "t":
                return t_power(1)
            if name == "alpha":
                return self.env.alpha
            if name in self.env.constants:
                return float(self.env.constants[name])
            raise self.error(f"unknown name {name!r}", tok)
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")

    # -- semantics -----------------------------------------------------------

    def combine(self, op: _Token, a: Value, b: Value) -> Value:
        try:
            if op.text == "/":
                if isinstance(b, Expression):
                    raise self.error("division is only allowed by constants", op, domain=True)
                if b == 0:
                    raise self.error("division by zero", op, domain=True)
                if isinstance(a, Expression):
                    return scale(1.0 / float(b), a)
                return a / b
            if isinstance(a, Expression) or isinstance(b, Expression):
                ea, eb = _as_expression(a), _as_expression(b)
                if op.text == "+":
                    return add(ea, eb)
                if op.text == "-":
                    return add(ea, scale(-1.0, eb))
                if not isinstance(a, Expression):
                    return scale(float(a), eb)
                if not isinstance(b, Expression):
                    return scale(float(b), ea)
                return multiply(ea, eb)
            if op.text == "+":
                return a + b
            if op.text == "-":
                return a - b
            return a * b
        except (OverflowError, ZeroDivisionError) as exc:
            raise self.error(str(exc), op, domain=True) from None

    def power(self, op: _Token, base_tok: _Token, base: Value, exponent: Value) -> Value:
        if isinstance(exponent, Expression):
            raise self.error("exponents must be constants", op, domain=True)
        if isinstance(exponent, float):
            raise self.error("exponent does not reduce to a rational", op, domain=True)
        try:
            if not isinstance(base, Expression):
                if exponent.denominator == 1 and abs(exponent) <= 1000 and not (base == 0 and exponent < 0):
                    return base ** int(exponent)
                if base < 0:
                    raise self.error("fractional power of a negative constant", op, domain=True)
                return float(base) ** float(exponent)
            if exponent.denominator == 1 and 0 <= exponent <= _MAX_INT_POWER:
                return base ** int(exponent)
            terms = base.terms
            if len(terms) == 1 and terms[0].xpower == 0 and terms[0].trig.kind == TrigKind.UNIT:
                term = terms[0]
                beta = term.texponent * exponent
                if term.coefficient < 0 and exponent.denominator != 1:
                    raise self.error("fractional power of a negative coefficient", op, domain=True)
                if beta < 0:
                    raise self.error("negative powers of t leave the algebra", op, domain=True)
                return t_power(beta, term.coefficient ** float(exponent))
            raise self.error(
                f"power {exponent} of a non-monomial expression is outside the algebra", op, domain=True
            )
        except (OverflowError, ZeroDivisionError) as exc:
            raise self.error(str(exc), op, domain=True) from None

    def call(self, name: str, tok: _Token, arg: Value) -> Value:
        if name == "gamma":
            if isinstance(arg, Expression):
                raise self.error("gamma() needs a constant argument", tok, domain=True)
            try:
                return gamma(float(arg))
            except DomainError as exc:
                raise self.error(str(exc), tok, domain=True) from None
        k = _harmonic(arg)
        if k is None:
            raise self.error(f"{name}() argument must be an integer multiple of pi*x", tok, domain=True)
        return sin_pi(k) if name == "sin" else cos_pi(k)


def _harmonic(arg: Value) -> int | None:
    if not isinstance(arg, Expression):
        return 0 if arg == 0 else None
    if arg.is_zero():
        return 0
    terms = arg.terms
    if len(terms) != 1:
        return None
    term = terms[0]
    if term.xpower != 1 or term.trig.kind != TrigKind.UNIT or term.texponent != 0:
        return None
    ratio = term.coefficient / math.pi
    k = round(ratio)
    if abs(ratio - k) > 1e-9 * max(1.0, abs(ratio)):
        return None
    return int(k)


def _as_expression(value: Value) -> Expression:
    if isinstance(value, Expression):
        return value
    return constant(float(value))


def parse_expression(text: Union[str, SourceText], env: ParseEnvironment | None = None) -> Expression:
    """Parse ``text`` into a canonical :class:`Expression`."""
    src = text if isinstance(text, SourceText) else SourceText(text)
    if not src.raw.strip():
        raise ParseError("empty expression", src.line, src.column, src.origin)
    return _Parser(src, env or ParseEnvironment()).parse()


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"{text!r} is not a rational number") from None


_KEYS = {"name", "alpha", "initial", "source", "exact", "x_min", "x_max", "t_max", "nonlinearity"}
_REQUIRED = ("alpha", "initial", "source")


def _read_fields(src: SourceText) -> dict[str, tuple[str, int, int]]:
    fields: dict[str, tuple[str, int, int]] = {}
    lines = src.raw.splitlines()
    i = 0
    while i < len(lines):
        lineno = i + 1
        line = lines[i].split("#", 1)[0]
        i += 1
        if not line.strip():
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, 1, src.origin)
        key, value = line.split("=", 1)
        key = key.strip()
        col = line.index("=") + 2
        while value.rstrip().endswith("\\") and i < len(lines):
            value = value.rstrip()[:-1] + " " + lines[i].split("#", 1)[0]
            i += 1
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, 1, src.origin)
        if key in fields:
            raise ParseError(f"duplicate key {key!r}", lineno, 1, src.origin)
        fields[key] = (value.strip(), lineno, col)
    return fields


def parse_problem(text: Union[str, SourceText]) -> ProblemSpec:
    """Build a :class:`ProblemSpec` from a problem document."""
    src = text if isinstance(text, SourceText) else SourceText(text)
    fields = _read_fields(src)
    for key in _REQUIRED:
        if key not in fields:
            raise ParseError(f"missing required field {key!r}", 1, 1, src.origin)

    raw_alpha, line, col = fields["alpha"]
    try:
        env = ParseEnvironment(parse_rational(raw_alpha))
    except (ValueError, DomainError) as exc:
        raise ParseDomainError(f"alpha: {exc}", line, col, src.origin) from None

    def expression(key: str) -> Expression:
        value, line, col = fields[key]
        sub = SourceText(value, f"{src.origin}[{key}]", line, col)
        return parse_expression(sub, env)

    def number(key: str, default: float) -> float:
        if key not in fields:
            return default
        value, line, col = fields[key]
        try:
            return float(Fraction(value))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{key} must be a number", line, col, src.origin) from None

    nl_name = fields.get("nonlinearity", ("advection", 1, 1))[0]
    if nl_name not in NONLINEARITIES:
        raise ParseError(f"unknown nonlinearity {nl_name!r}", fields["nonlinearity"][1], 1, src.origin)

    initial = expression("initial")
    if not initial.is_time_independent():
        _, line, col = fields["initial"]
        raise ParseDomainError("the initial condition must not depend on t", line, col, src.origin)
    try:
        return ProblemSpec(
            alpha=env.alpha,
            initial=initial,
            source=expression("source"),
            exact=expression("exact") if "exact" in fields else None,
            x_range=(number("x_min", 0.0), number("x_max", 1.0)),
            t_max=number("t_max", 1.0),
            nonlinearity=NONLINEARITIES[nl_name],
            name=fields.get("name", (src.origin,))[0],
        )
    except DomainError as exc:
        raise ParseDomainError(str(exc), 1, 1, src.origin) from None
