"""Exception types shared across the package."""


class RosenError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(RosenError):
    """A parameter is outside its legal range (e.g. q < 3)."""


class ContextMismatchError(RosenError):
    """Operands belong to different ground fields."""


class ParseError(RosenError):
    """Malformed textual input; carries the offending position."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class DomainError(RosenError):
    """Input violates a mathematical precondition (non-vertex, infinity, ...)."""


class UndefinedParentsError(DomainError):
    """Face lookup requested for equal or adjacent endpoints."""


class EmptyChainError(DomainError):
    """Chain construction requested for equal or adjacent endpoints."""


class ThetaUnsupportedError(DomainError):
    """Face/chain machinery does not exist for the theta group (its graph is a tree)."""


class InternalError(RosenError):
    """An iteration cap or consistency check tripped; indicates a bug."""
