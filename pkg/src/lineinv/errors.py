"""Exception types raised across the package."""


class LineInvError(ValueError):
    """Base class for domain errors (bad input, not bugs)."""


class NotSemistandard(LineInvError):
    pass


class EntryOutOfRange(LineInvError):
    pass


class InvalidParameter(LineInvError):
    pass


class DimensionMismatch(LineInvError):
    pass


class WeightMismatch(LineInvError):
    pass


class OutsidePolytope(LineInvError):
    pass


class NotLatticePoint(LineInvError):
    pass


class EmptyDomain(LineInvError):
    pass


class InvalidIndexSet(LineInvError):
    pass


class InfeasibleWeight(LineInvError):
    pass


class OddTotalWeight(LineInvError):
    pass


class TooLarge(LineInvError):
    """The requested computation exceeds the desk-scale limits."""
