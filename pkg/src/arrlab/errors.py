"""Exception types raised across the package."""

from __future__ import annotations


class ArrlabError(Exception):
    """Base class for all package errors."""


class InvalidParameters(ArrlabError, ValueError):
    """Graph parameters (n, k) or a family size are not admissible."""


class OutOfScope(ArrlabError, ValueError):
    """The requested check or closed form does not cover these parameters."""


class BudgetExceeded(ArrlabError):
    """A search needed more candidates than its budget allows.

    ``partial`` carries whatever was fully verified before stopping.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
