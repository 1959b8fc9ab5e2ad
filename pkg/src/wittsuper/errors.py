"""Exception types raised across the package."""


class WittError(Exception):
    """Base class for every error raised by wittsuper."""


class OverlappingSets(WittError, ValueError):
    pass


class SignatureMismatch(WittError, ValueError):
    pass


class SizeMismatch(WittError, ValueError):
    pass


class AlphabetError(WittError, ValueError):
    pass


class DegreeCapExceeded(WittError, RuntimeError):
    pass


class IndexOutOfRange(WittError, IndexError):
    pass


class SpanSolveFailure(WittError, ArithmeticError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class WeightNotInSupport(WittError, ValueError):
    pass


class UndecidedWithinWindow(WittError, RuntimeError):
    pass


class InvalidTriangularSplit(WittError, ValueError):
    pass


class InconsistentShadow(WittError, ValueError):
    pass


class GradationError(WittError, ValueError):
    pass


class NotAKacModule(WittError, ValueError):
    pass


class WindowTooLarge(WittError, RuntimeError):
    pass


class UnknownTag(WittError, ValueError):
    pass


class NotClassifiable(WittError, RuntimeError):
    pass


class NotMaterializable(WittError, ValueError):
    """Raised when an infinite-dimensional module is asked for a concrete basis."""
