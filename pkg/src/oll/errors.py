"""Semantic exception hierarchy shared by all modules."""

from __future__ import annotations


class OllError(Exception):
    """Base class for every error raised by this package."""


class DomainError(OllError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ValidationError(OllError, ValueError):
    """A parameter set violates a structural requirement.

    The message always names the failed condition (e.g. "not locally
    integrable") so configuration errors are actionable.
    """


class OutOfWindowError(OllError):
    """An orbit step produced an atom index outside the finite index window.

    Carries the iterate ``n`` and the offending ``index`` when known so the
    caller can report how far the orbit got before truncation.
    """

    def __init__(self, message: str, n: int | None = None, index: int | None = None):
        super().__init__(message)
        self.n = n
        self.index = index


class AdmissibilityError(OllError):
    """The requested dynamics notion needs capabilities the system lacks.

    Two-sided notions (expansive, uniformly expansive) require an invertible
    composition operator with a bounded inverse.
    """


class NumericError(OllError, ArithmeticError):
    """An iterative routine failed to converge.

    Carries the final bracket so the failure is diagnosable.
    """

    def __init__(self, message: str, bracket: tuple[float, float] | None = None):
        super().__init__(message)
        self.bracket = bracket


class ConfigError(OllError, ValueError):
    """A job configuration could not be parsed or validated.

    ``key_path`` points at the offending entry (e.g. "weight.alpha").
    """

    def __init__(self, message: str, key_path: str | None = None):
        super().__init__(message if key_path is None else f"{key_path}: {message}")
        self.key_path = key_path
