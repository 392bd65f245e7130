"""Iterative Aboodh transform solver for nonlinear fractional integro-differential equations."""

from .errors import DomainError, ParseError, TermCapExceeded
from .expr import Expression

__version__ = "0.1.0"

__all__ = ["DomainError", "Expression", "ParseError", "TermCapExceeded", "__version__"]
