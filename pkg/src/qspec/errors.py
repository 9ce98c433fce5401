"""Exception hierarchy shared by every module of the package."""


class QSpecError(Exception):
    """Base class for all package errors."""


class DomainError(QSpecError, ValueError):
    """An argument lies outside the domain of the operation."""


class ModeError(QSpecError, ValueError):
    """A multigraph was passed where a simple graph is required (or vice versa)."""


class PreconditionError(QSpecError, ValueError):
    """A documented precondition of the operation does not hold."""


class CapabilityError(QSpecError, ValueError):
    """The input is valid but exceeds what the implementation supports."""


class NumericError(QSpecError, ArithmeticError):
    """An iterative numeric method failed to converge within its cap."""


class VerificationError(QSpecError, AssertionError):
    """A property that must always hold was observed to fail."""


class Graph6Error(QSpecError, ValueError):
    """Malformed graph6 input; ``offset`` points at the offending character."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
        self.offset = offset
