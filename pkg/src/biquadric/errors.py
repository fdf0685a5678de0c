"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument violates a mathematical precondition (zero input, composite prime, ...)."""


class InsufficientDepthError(DomainError):
    """A modular search was requested at a depth too small to be conclusive."""


class BoundaryBaseError(DomainError):
    """A base point with a zero coordinate was passed where xyz != 0 is required."""


class FConditionError(DomainError):
    """An operation requiring the square-restriction conditions was called on a form failing them."""


class UnsupportedDivisorError(DomainError):
    """Residue requested along a divisor outside the supported (linear) class."""


class PolyParseError(ValueError):
    """Polynomial text could not be parsed; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
