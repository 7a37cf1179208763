"""Exception types raised across the package."""
from __future__ import annotations


class ModgroupError(Exception):
    """Base class for all errors raised by this package."""


class CatalogParseError(ModgroupError):
    """A catalog file line could not be parsed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class CatalogValidationError(ModgroupError):
    """A catalog row or the catalog as a whole violates an invariant."""

    def __init__(self, message: str, *, field: str | None = None, row: int | None = None):
        detail = f"row {row}: {message}" if row is not None else message
        super().__init__(detail)
        self.field = field
        self.row = row


class ParameterError(ModgroupError, ValueError):
    """A numeric parameter is outside its valid domain."""


class ConstraintError(ModgroupError):
    """A grouping violates one of the partition constraints.

    ``constraint`` is ``"g1"`` (group sizes must sum to the catalog size) or
    ``"g2"`` (every group must hold at least one design).
    """

    def __init__(self, constraint: str, message: str):
        super().__init__(f"{constraint}: {message}")
        self.constraint = constraint


class EnumerationCapError(ModgroupError):
    """Exhaustive enumeration refused because the composition count exceeds the cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} compositions exceed the enumeration cap of {cap}")
        self.count = count
        self.cap = cap


class NormalizationError(ModgroupError):
    """A ratio is undefined: zero baseline with a nonzero numerator."""
