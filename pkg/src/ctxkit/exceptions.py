"""Custom exceptions for ctxkit."""

from typing import Any, Optional, Tuple


class CtxkitError(Exception):
    """Base exception for all ctxkit errors."""
    pass


class DomainError(CtxkitError, ValueError):
    """Raised when an operation's precondition does not hold."""
    pass


class ScenarioError(DomainError):
    """Raised for measurement scenarios that violate the (M, C) invariants."""

    def __init__(self, message: str, first: Optional[Tuple[str, ...]] = None,
                 second: Optional[Tuple[str, ...]] = None):
        super().__init__(message)
        self.first = first
        self.second = second


class NormalizationError(DomainError):
    """Raised when a context table is not a probability distribution."""

    def __init__(self, message: str, context: Optional[int] = None):
        super().__init__(message)
        self.context = context


class SignallingError(CtxkitError):
    """Raised when a model's marginals disagree on a context overlap."""

    def __init__(self, message: str, pair: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.pair = pair


class ParseError(CtxkitError, ValueError):
    """Raised for malformed JSON, DIMACS, or amplitude input."""

    def __init__(self, message: str, source: Optional[str] = None,
                 line: Optional[int] = None):
        super().__init__(message)
        self.source = source
        self.line = line


class CapExceededError(CtxkitError):
    """Raised when an instance is larger than a configured cap."""

    def __init__(self, message: str, cap: Optional[int] = None,
                 size: Optional[Any] = None, what: Optional[str] = None):
        super().__init__(message)
        self.cap = cap
        self.size = size
        self.what = what


class NotComputedError(CapExceededError):
    """Raised when a hidden-variable LP is refused because of its size."""
    pass
