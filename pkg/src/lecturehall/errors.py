"""Exception types shared across the package."""


class LectureHallError(Exception):
    """Base class for all package errors."""


class DomainError(LectureHallError):
    """Input violates a documented precondition."""


class BudgetError(LectureHallError):
    """Computation would exceed a desk-scale guard; pass unsafe=True to override."""


class VerificationError(LectureHallError):
    """An exact identity, certificate, or consistency check failed."""
