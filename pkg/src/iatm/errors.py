"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An operation was applied outside the set where it is defined."""


class ParseError(ValueError):
    """Malformed input text; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1, origin: str = "<inline>"):
        self.message = message
        self.line = line
        self.column = column
        self.origin = origin
        super().__init__(f"{origin}:{line}:{column}: {message}")


class TermCapExceeded(RuntimeError):
    """A series component grew beyond the configured term budget."""


class ParseDomainError(ParseError, DomainError):
    """Well-formed text whose meaning falls outside the algebra (e.g. ``t^pi``)."""
