"""Exception hierarchy shared by every layer of :mod:`biratio`."""


class BiratioError(Exception):
    """Base class for all errors raised by the package."""


class ZeroDenominator(BiratioError, ZeroDivisionError):
    pass


class BothZero(BiratioError, ValueError):
    pass


class MixedField(BiratioError, TypeError):
    """Arithmetic between quadratic numbers living in different fields."""


class DegenerateComposition(BiratioError):
    """A composed coordinate collapsed to (0, 0) after clearing."""


class PositiveDimensionalLocus(BiratioError):
    """An elimination produced an identically vanishing resultant."""


class SimplicityViolation(BiratioError):
    pass


class RealRootDetected(BiratioError):
    pass


class SingularityApproach(BiratioError):
    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"orbit came within guard radius of a singularity at step {step}")


class ResourceCapExceeded(BiratioError):
    pass


class ParseError(BiratioError, ValueError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} (at position {position})")
