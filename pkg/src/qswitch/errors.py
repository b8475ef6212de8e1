"""qswitch error classes."""

from __future__ import annotations


class QSwitchError(Exception):
    """Base exception class for all qswitch errors."""


class QSwitchValueError(QSwitchError, ValueError):
    """Raised when a value breaks a size, dimension or state invariant."""


class QSwitchSpecError(QSwitchError):
    """Raised when an input document cannot be parsed or fails schema validation."""

    def __init__(self, message: str, errors: list[Exception] | None = None) -> None:
        """Initialize the exception with a list of errors.

        :param message: Error message
        :type message: str
        :param errors: List of parsing or validation errors, defaults to None
        :type errors: list[Exception] | None, optional
        """
        super().__init__(message)
        self.errors = errors or []


class QSwitchCheckError(QSwitchError):
    """Raised when a verification of the switch evaluators fails."""

    def __init__(self, message: str, failures: list[str]) -> None:
        """Initialize the exception with the names of the failed checks.

        :param message: Error message
        :type message: str
        :param failures: Descriptions of the failed checks
        :type failures: list[str]
        """
        super().__init__(message)
        self.failures = failures
