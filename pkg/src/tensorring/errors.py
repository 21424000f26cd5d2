class TensorRingError(Exception):
    """Base class for all errors raised by the package."""


class ShapeError(TensorRingError, ValueError):
    pass


class AxiomViolation(TensorRingError):
    """A structure failed one of its defining identities."""


class FieldMismatch(TensorRingError):
    pass


class AlgebraMismatch(TensorRingError):
    pass


class InfiniteDimensional(TensorRingError):
    pass


class MalformedRelation(TensorRingError):
    pass


class NotNilpotentWithinCap(TensorRingError):
    pass


class PreconditionViolated(TensorRingError):
    pass


class NotOneNilpotent(TensorRingError):
    pass


class NonzeroContextProducts(TensorRingError):
    def __init__(self, message: str, dims: tuple[int, int]):
        super().__init__(message)
        self.dims = dims


class DocumentError(TensorRingError):
    """A JSON document is malformed; ``path`` locates the offending entry."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
