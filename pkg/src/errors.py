"""
Exception hierarchy shared by the weights, engines, cache and CLI layers.
"""

from typing import Any, Dict, Optional


class VerlindeError(Exception):
    """Base class of every error raised by this package."""

    exit_code: int = 1


class InvalidWeightError(VerlindeError, ValueError):
    """A partition or parabolic point is malformed or exceeds the level."""

    exit_code = 2


class InvalidInstanceError(VerlindeError, ValueError):
    """A problem instance (genus, rank, degree, level, points) is invalid."""

    exit_code = 2


class PreconditionError(VerlindeError, ValueError):
    """An operation was called outside its domain."""

    exit_code = 2


class PrecisionExceeded(VerlindeError):
    """A floating evaluation cannot be certified within the tolerance."""

    exit_code = 4

    def __init__(self, message: str, residual: Optional[float] = None, digits: Optional[int] = None):
        super().__init__(message)
        self.residual = residual
        self.digits = digits


class EngineMismatch(VerlindeError):
    """The analytic and recursive engines disagree on an instance."""

    exit_code = 3

    def __init__(self, message: str, analytic: int, recursive: int, trace: Optional[Any] = None):
        super().__init__(message)
        self.analytic = analytic
        self.recursive = recursive
        self.trace = trace

    def details(self) -> Dict[str, Any]:
        return {
            "analytic": str(self.analytic),
            "recursive": str(self.recursive),
            "trace_steps": len(self.trace.steps) if self.trace is not None else 0,
        }


class RecursionBudgetExceeded(VerlindeError):
    """The depth cap of a recursive engine was hit (a logic error, never truncation)."""

    exit_code = 1


class CacheCorruptError(VerlindeError):
    """A fusion memo file could not be parsed or fails its schema."""

    exit_code = 2


class CacheVersionError(VerlindeError):
    """A fusion memo file was written by an incompatible format version."""

    exit_code = 2

    def __init__(self, message: str, found: Any, expected: int):
        super().__init__(message)
        self.found = found
        self.expected = expected
