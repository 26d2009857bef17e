"""Exception types shared across the package."""


class GaldistError(Exception):
    pass


class SingularMatrix(GaldistError, ArithmeticError):
    pass


class DimensionMismatch(GaldistError, ValueError):
    pass


class OutOfRange(GaldistError, IndexError):
    pass


class InternalCheckFailed(GaldistError, AssertionError):
    """Two independent computations disagree; this is a bug, not bad input."""


class NotAdjacent(GaldistError, ValueError):
    pass


class SizeMismatch(GaldistError, ValueError):
    pass


class NotAutodualFamily(GaldistError, ValueError):
    pass


class PreconditionViolated(GaldistError, ValueError):
    pass


class GenerationFailed(GaldistError, RuntimeError):
    pass
