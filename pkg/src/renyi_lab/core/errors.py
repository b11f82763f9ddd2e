"""Exception hierarchy shared by every renyi-lab module."""

from typing import Optional


class RenyiLabError(Exception):
    """Base class for all renyi-lab errors.

    Args:
        message: Human readable description
        module: Name of the module that raised the error
    """

    default_module = "core"

    def __init__(self, message: str, module: Optional[str] = None):
        super().__init__(message)
        self.module = module or self.default_module


class InvalidInput(RenyiLabError, ValueError):
    """Input violates a documented precondition."""


class NegativeWeight(InvalidInput):
    pass


class ZeroMass(InvalidInput):
    pass


class AlphabetMismatch(InvalidInput):
    pass


class ShapeMismatch(InvalidInput):
    pass


class WeightMismatch(InvalidInput):
    pass


class InvalidOrder(InvalidInput):
    pass


class TooLarge(InvalidInput):
    """Exhaustive enumeration would exceed its configured size limit."""


class InfiniteValue(InvalidInput):
    """The requested optimum is infinite, so there is no optimizer to report."""


class DegenerateTilting(InvalidInput):
    """The normalizer of a tilted distribution is 0 or infinite."""

    default_module = "variational"


class DegenerateSplit(InvalidInput):
    """The binary split entropy vanishes, so the recursivity constant is undefined.

    Args:
        message: Human readable description
        h_full: H_alpha of the original distribution
        h_merged: H_alpha of the merged distribution
    """

    default_module = "variational"

    def __init__(self, message: str, h_full: float, h_merged: float):
        super().__init__(message)
        self.h_full = h_full
        self.h_merged = h_merged


class KraftViolation(InvalidInput):
    default_module = "codelength"


class KraftWarning(UserWarning):
    """A codelength assignment does not satisfy Kraft's inequality."""


class DenominatorMismatch(InvalidInput):
    default_module = "hyptest"


class AlphaOutOfRange(InvalidInput):
    default_module = "hyptest"


class IndeterminateForm(RenyiLabError, ArithmeticError):
    """Extended-real arithmetic produced an undefined combination such as -1 * inf."""


class NonConvergence(RenyiLabError, RuntimeError):
    """An iterative solver stopped before meeting its certificate."""

    default_module = "optim"
