"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceRangeError(ArithmeticError):
    """No evaluation strategy certifies the requested tolerance at this argument.

    Raised instead of silently returning an inaccurate value.
    """


class ResolutionError(ValueError):
    """A sampled function is too coarse for the requested operation."""


class PreconditionError(ValueError):
    """Input data violates a documented precondition (e.g. nonzero initial values)."""


class TruncationWarning(UserWarning):
    """The tail of a truncated integral may exceed the requested tolerance."""
