"""Exception types shared across the package."""


class ScalarParseError(ValueError):
    """A scalar string does not conform to the scalar grammar."""

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position


class FieldMismatchError(TypeError):
    """Operands carry different field tags (Q vs Qq)."""


class DimensionMismatchError(ValueError):
    """Leg dimensions of operands are incompatible."""


class SingularMatrixError(ValueError):
    """An exact inverse was requested for a rank-deficient matrix."""

    def __init__(self, message, rank=None):
        if rank is not None:
            message = "%s (rank %d)" % (message, rank)
        super().__init__(message)
        self.rank = rank


class CrossInvertibilityError(SingularMatrixError):
    """S is invertible but its partial transpose S^t2 is not."""


class InconsistentSystemError(ValueError):
    """An exact linear system has no solution."""


class SchemaError(ValueError):
    """A JSON document violates one of the file schemas."""

    def __init__(self, path, message):
        super().__init__("%s: %s" % (path, message))
        self.path = path


class ReconstructionError(ValueError):
    """The reconstruction pipeline cannot proceed on this input."""
