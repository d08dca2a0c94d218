"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations

from typing import Any


class TotalCofibreError(Exception):
    pass


class ConfigurationError(TotalCofibreError):
    pass


class InputError(TotalCofibreError, ValueError):
    pass


class DimensionMismatchError(InputError):
    pass


class DuplicateLabelError(InputError):
    pass


class UnknownElementError(InputError):
    pass


class UnsupportedGeneratorError(InputError):
    pass


class PosetTooLargeError(InputError):
    pass


class NotAPosetError(InputError):
    """A relation violates the poset axioms; ``pair`` names the offending elements."""

    def __init__(self, message: str, pair: tuple[str, str] | None = None):
        super().__init__(message)
        self.pair = pair


class NotAnIdealError(InputError):
    """A subset is not downward closed: ``pair`` is (x, y) with x < y, y in the subset, x not."""

    def __init__(self, message: str, pair: tuple[str, str] | None = None):
        super().__init__(message)
        self.pair = pair


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")
        self.line = line
        self.column = column


class ContainmentError(TotalCofibreError):
    pass


class InvalidMapError(TotalCofibreError):
    pass


class NotAChainComplexError(TotalCofibreError):
    pass


class NotFunctorialError(TotalCofibreError):
    def __init__(self, message: str, pair: tuple[str, str] | None = None):
        super().__init__(message)
        self.pair = pair


class ConditionsNotSatisfiedError(TotalCofibreError):
    """Raised when an operation needs (P1)/(P2) and the pair fails them."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report
