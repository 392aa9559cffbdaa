"""Exception hierarchy shared by every ncprob module."""


class NcprobError(Exception):
    """Base class for all library errors."""


class InvalidInputError(NcprobError, ValueError):
    """An argument violates an operation's precondition."""


class SizeLimitError(InvalidInputError):
    """A requested enumeration exceeds the configured cap."""


class OrderLimitError(InvalidInputError):
    """Not enough data (moments, Jacobi levels) for the requested order."""


class UnsupportedOperationError(NcprobError):
    """The operation is not defined for this flavor."""


class NotAMeasureError(NcprobError, ValueError):
    """A rational function is not the Cauchy transform of a probability measure."""


class InvalidMomentSequenceError(InvalidInputError):
    """A sequence fails the Hankel positivity test."""


class InternalInvariantError(NcprobError, RuntimeError):
    """A mathematically guaranteed property failed; indicates a bug."""


class DomainError(InvalidInputError):
    """Evaluation point outside the region where a transform is used."""


class AccuracyError(NcprobError, ArithmeticError):
    """A numerical routine did not reach its tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved
