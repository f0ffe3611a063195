"""Exception types shared across the package."""


class ExtAlgError(Exception):
    """Base class for all package errors."""


class ShapeError(ExtAlgError, ValueError):
    pass


class Singular(ExtAlgError, ZeroDivisionError):
    pass


class CapacityError(ExtAlgError):
    """A request exceeds a configured size cap (compound size, oracle search space)."""


class ZeroVector(ExtAlgError, ValueError):
    pass


class FrameMismatch(ExtAlgError, ValueError):
    pass


class NotABasis(ExtAlgError, ValueError):
    pass


class PreconditionError(ExtAlgError, ValueError):
    """Input violates an operation's precondition; ``index`` locates it when known."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class GenericityFailure(ExtAlgError):
    """No sampled frame passed every genericity check within the retry limit."""

    def __init__(self, message, failing_check=None):
        super().__init__(message)
        self.failing_check = failing_check


class ParseError(ExtAlgError, ValueError):
    """Malformed JSON input or a document that does not match its schema."""
