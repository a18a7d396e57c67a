"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` (malformed input
objects) and :class:`PreconditionError` (well-formed input for which the
requested construction is mathematically unavailable).  The CLI maps them to
exit codes 3 and 2 respectively.
"""

from __future__ import annotations


class QPKError(Exception):
    """Base class for all library errors."""


class ValidationError(QPKError, ValueError):
    pass


class ParseError(ValidationError):
    """Raised for unreadable model files; carries a location string."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class OverlapError(ValidationError):
    pass


class CoverageError(ValidationError):
    pass


class SpaceMismatch(ValidationError):
    pass


class NegativeEntry(ValidationError):
    pass


class RowMassError(ValidationError):
    pass


class MeasurabilityError(ValidationError):
    """Kernel rows differ inside a block of the partition they must respect."""

    def __init__(self, message: str, block: tuple[int, ...] | None = None):
        self.block = block
        super().__init__(message)


class NotProbability(ValidationError):
    pass


class ChainOrderError(ValidationError):
    def __init__(self, message: str, level: int | None = None, witness=None):
        self.level = level
        self.witness = witness
        super().__init__(message)


class PreconditionError(QPKError):
    pass


class NotMeasurableSet(PreconditionError):
    pass


class NotRestriction(PreconditionError):
    pass


class NotMember(PreconditionError):
    pass


class NotFull(PreconditionError):
    pass


class DimensionTooLarge(PreconditionError):
    pass


class WindowTooLarge(PreconditionError):
    pass


class NotStabilized(PreconditionError):
    def __init__(self, points):
        self.points = tuple(sorted(points))
        super().__init__(f"kernel rows did not stabilize at points {list(self.points)}")
