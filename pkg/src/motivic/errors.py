"""Exception types.  ``HardFailure`` subclasses signal a violated identity."""


class MotivicError(Exception):
    pass


class HardFailure(MotivicError):
    """A computed identity that the mathematics guarantees did not hold."""


class UsageError(MotivicError):
    """Bad input: out-of-range arguments, unknown presets, malformed files."""


class NotDivisible(HardFailure, ArithmeticError):
    pass


class NonIntegralResult(HardFailure, ArithmeticError):
    pass


class NonIntegralSolution(HardFailure, ArithmeticError):
    pass


class NotStabilized(HardFailure):
    pass


class StabilityMismatch(HardFailure):
    pass


class NotAMonomial(UsageError, ValueError):
    pass


class BadConstantTerm(UsageError, ValueError):
    pass


class LimitExceeded(UsageError, ValueError):
    pass


class ModeMismatch(UsageError, ValueError):
    pass


class HalfExponentInput(UsageError, ValueError):
    pass


class UnsupportedG(UsageError, ValueError):
    pass


class UnknownPreset(UsageError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown preset"


class MalformedDiamond(UsageError, ValueError):
    pass
