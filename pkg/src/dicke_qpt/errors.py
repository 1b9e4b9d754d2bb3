"""Exception hierarchy.

Everything raised on purpose derives from :class:`DickeError`.  The two
intermediate classes decide the CLI exit code: parameter problems exit
with 2, numerical failures with 3.
"""


class DickeError(Exception):
    pass


class InvalidParameters(DickeError, ValueError):
    exit_code = 2


class NumericalFailure(DickeError, ArithmeticError):
    exit_code = 3


# parameter domain
class InvalidCouplings(InvalidParameters):
    pass


class SqueezeDivergence(InvalidParameters):
    """lambda_minus == lambda_plus: the squeeze parameter r is infinite."""


class ZeroCoupling(InvalidParameters):
    pass


class SzZero(InvalidParameters):
    pass


class NoTransition(InvalidParameters):
    pass


class RatioOne(InvalidParameters):
    pass


class ConfigError(InvalidParameters):
    pass


# numerical / phase domain
class PhaseBoundary(NumericalFailure):
    """A(A+4C) vanishes within tolerance.  The gap is zero, beta is undefined."""

    def __init__(self, msg, gap=0.0):
        super().__init__(msg)
        self.gap = gap


class Unstable(NumericalFailure):
    pass


class DegenerateL(NumericalFailure):
    pass


class ImaginaryGap(NumericalFailure):
    pass


class BelowCritical(NumericalFailure):
    pass


class NoConvergence(NumericalFailure):
    pass


class CutoffLimit(NumericalFailure):
    def __init__(self, msg, n_max=None, last_delta=None):
        super().__init__(msg)
        self.n_max = n_max
        self.last_delta = last_delta


class NoCrossing(NumericalFailure):
    pass


class IoError(DickeError, OSError):
    exit_code = 3


class CutoffTooSmall(UserWarning):
    pass
