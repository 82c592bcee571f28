"""Exception hierarchy shared by all modules."""


class AlgebraError(Exception):
    """Base class for domain errors raised by this package."""


class RingMismatchError(AlgebraError):
    """Operands belong to different rings (or incompatible parameters)."""


class NotAUnitError(AlgebraError):
    """Inversion was requested for a non-unit."""


class PrecisionError(AlgebraError):
    """A Witt-vector truncation is too short for the requested operation."""


class ResourceLimitError(AlgebraError):
    """A guarded computation exceeded its configured budget."""
