"""Exception types shared across the package.

Each maps to a distinct CLI exit code.
"""

from __future__ import annotations


class CayleySpecError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ParseError(CayleySpecError, ValueError):
    """Malformed cycle notation, group spec or set spec."""

    exit_code = 2


class CapExceededError(CayleySpecError):
    """A configured size limit (group order, oracle order, census blocks) was hit."""

    exit_code = 3


class VerificationError(CayleySpecError):
    """An internal consistency check failed; indicates a bug, not a verdict."""

    exit_code = 4
