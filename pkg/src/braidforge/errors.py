"""Exception hierarchy shared by every module and the CLI exit-code mapping."""

from __future__ import annotations


class BraidforgeError(Exception):
    """Base class for all library errors."""

    exit_code = 1
    kind = "error"


class InvalidInputError(BraidforgeError, ValueError):
    """Malformed or out-of-range input (CLI exit code 2)."""

    exit_code = 2
    kind = "input_error"


class DomainError(BraidforgeError):
    """Well-formed input for which the requested computation is not defined (exit code 1)."""

    exit_code = 1
    kind = "domain_error"


class UnsupportedGroupError(DomainError):
    kind = "unsupported_group"


class NotUnitarizableError(DomainError):
    kind = "not_unitarizable"
