"""
Errors - Exception hierarchy for witnesskit

Library code raises these; the command layer in tools/ turns them into
(exit_code, message) pairs. Every validation error names the thing that
was wrong so a user can find it in their input file.
"""

from typing import Any, List, Optional


class WitnessKitError(Exception):
    """Base class for all witnesskit errors."""


class ValidationError(WitnessKitError, ValueError):
    """Invalid input data (shapes, weights, Hermiticity, positivity...)."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field


class DimensionMismatchError(ValidationError):
    """Local dimensions of two objects disagree."""

    def __init__(self, axis: str, expected: int, got: int):
        super().__init__(
            f"dimension mismatch on {axis}: expected {expected}, got {got}",
            field=axis,
        )
        self.axis = axis
        self.expected = expected
        self.got = got


class ConfigError(ValidationError):
    """Settings file or override problem."""

    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(message, field=key)
        self.key = key


class StateFileError(ValidationError):
    """State or witness file could not be parsed."""

    def __init__(self, message: str, field: Optional[str] = None,
                 line: Optional[int] = None):
        location = []
        if field:
            location.append(f"field '{field}'")
        if line is not None:
            location.append(f"line {line}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message, field=field)
        self.line = line


class TruncationError(WitnessKitError):
    """Compression onto the leading block removed the whole state."""

    def __init__(self, message: str = "truncation annihilates state"):
        super().__init__(message)


class RefusalError(WitnessKitError):
    """Request outside what a routine is willing to compute."""


class SearchFailure(WitnessKitError):
    """The cutting-plane search ended without a separating functional."""

    def __init__(self, reason: str, trace: Optional[List[Any]] = None):
        super().__init__(reason)
        self.reason = reason
        self.trace = list(trace or [])
