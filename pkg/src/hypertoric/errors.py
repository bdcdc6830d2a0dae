"""Exception hierarchy.

``ValidationError`` subclasses describe bad input (CLI exit code 2);
``InvariantViolation`` means a theorem-level check failed, which is always
a bug (CLI exit code 1).
"""


class HypertoricError(Exception):
    pass


class ValidationError(HypertoricError, ValueError):
    pass


class InvariantViolation(HypertoricError, AssertionError):
    pass


class DimensionTooLarge(ValidationError):
    pass


class DependentColumns(ValidationError):
    pass


class ZeroNormal(ValidationError):
    pass


class OnWall(ValidationError):
    pass


class NotACircuit(ValidationError):
    pass


class NotOnMomentFibre(ValidationError):
    pass


class BadWallConfiguration(ValidationError):
    pass


class RankTooLow(ValidationError):
    pass


class Disconnected(InvariantViolation):
    pass


class EndpointMismatch(ValidationError):
    pass


class MissingEdge(ValidationError):
    pass


class NotALoop(ValidationError):
    pass


class UncheckedRepresentation(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass
