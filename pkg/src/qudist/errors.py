"""Exception hierarchy."""


class QudistError(Exception):
    pass


class ValidationError(QudistError, ValueError):
    """Input violates a precondition."""


class NotHermitian(ValidationError):
    pass


class NotProjection(ValidationError):
    pass


class NotInvolution(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class DegenerateSpectrum(ValidationError):
    """An eigenvalue of the generic compression sits on the boundary of (0, 1)."""


class MissingClusterValue(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class CaseOne(ValidationError):
    """ran(e) meets an eigenspace of u, so no Case 2 minimizer exists."""


class NormTooLarge(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class BadSpec(ValidationError):
    pass


class BadRange(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class TooManyClusters(ValidationError):
    pass


class NonConvergence(QudistError, ArithmeticError):
    pass


class ConsistencyError(QudistError, AssertionError):
    """Two independent computations of the same quantity disagree."""
