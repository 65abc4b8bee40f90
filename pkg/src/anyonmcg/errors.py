"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "AnyonToolError",
    "GroupMismatchError",
    "BoundExceededError",
    "MissingEntryError",
    "InvalidFormError",
    "NonModularModelError",
    "NotUnitaryError",
    "NotNormalizerError",
    "ParseError",
    "ConsistencyError",
]


class AnyonToolError(Exception):
    """Base class for all domain errors raised by this package."""


class GroupMismatchError(AnyonToolError):
    """Two values attached to different group specs were combined."""


class BoundExceededError(AnyonToolError):
    """An enumeration or dense-matrix bound would be exceeded."""

    def __init__(self, message: str, required: int, bound: int) -> None:
        super().__init__(f"{message} (required {required}, bound {bound})")
        self.required = required
        self.bound = bound


class MissingEntryError(AnyonToolError):
    """A quadratic form table does not cover the whole group."""


class InvalidFormError(AnyonToolError):
    """A quadratic form table violates one of the defining axioms."""


class NonModularModelError(AnyonToolError):
    """An operation that needs a nondegenerate form got a degenerate one."""


class NotUnitaryError(AnyonToolError):
    """A matrix expected to be unitary is not, within tolerance."""


class NotNormalizerError(AnyonToolError):
    """A unitary does not normalize the Pauli group, within tolerance."""


class ParseError(AnyonToolError):
    """A model file or circuit file is malformed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConsistencyError(AnyonToolError):
    """An internal cross-check failed; indicates a bug, not bad input."""
