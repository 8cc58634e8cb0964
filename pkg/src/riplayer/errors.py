"""Exception hierarchy.

``ValidationError`` subclasses signal bad input data (CLI exit code 2);
everything else is a misuse of the API.
"""


class RiplayerError(Exception):
    pass


class ValidationError(RiplayerError, ValueError):
    pass


class DimensionMismatch(ValidationError):
    pass


class DuplicatePoint(ValidationError):
    pass


class NegativeDistance(ValidationError):
    pass


class ZeroOffDiagonal(ValidationError):
    pass


class TriangleViolation(ValidationError):
    def __init__(self, triple, message=None):
        self.triple = tuple(int(i) for i in triple)
        super().__init__(message or f"triangle inequality violated on triple {self.triple}")


class NotAnInclusion(ValidationError):
    pass


class LengthMismatch(RiplayerError, ValueError):
    pass


class EmptyConfigSpace(RiplayerError, ValueError):
    pass


class BudgetExceeded(RiplayerError, RuntimeError):
    pass


class NotAVertex(RiplayerError, ValueError):
    pass


class BelowFirstEvent(RiplayerError, ValueError):
    pass


class ForestMismatch(RiplayerError, ValueError):
    pass


class NoCommonUpperBound(RiplayerError, ValueError):
    pass


class RTooSmall(RiplayerError, ValueError):
    pass


class ThetaNotVertex(RiplayerError, ValueError):
    pass
