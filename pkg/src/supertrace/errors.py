"""Exception hierarchy shared by every layer of the package."""


class SupertraceError(Exception):
    """Base class for all package errors."""


class ZeroInverse(SupertraceError, ZeroDivisionError):
    pass


class NotInvertible(SupertraceError, ArithmeticError):
    """A residue class is a zero divisor; ``gcd`` is the offending common factor."""

    def __init__(self, gcd, message=None):
        self.gcd = gcd
        super().__init__(message or f"not invertible, gcd = {gcd}")


class BothZero(SupertraceError, ValueError):
    pass


class SingularCurve(SupertraceError, ValueError):
    pass


class FieldMismatch(SupertraceError, TypeError):
    pass


class Undecided(SupertraceError):
    pass


class JInvariantMismatch(SupertraceError, ValueError):
    pass


class InvalidKernel(SupertraceError, ValueError):
    pass


class CoefficientLeak(SupertraceError, ValueError):
    """A computed coefficient escaped the base field."""


class BrokenChain(SupertraceError, ValueError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"chain broken at step {index}")


class NotEndomorphism(SupertraceError, ValueError):
    pass


class RingMismatch(SupertraceError, ValueError):
    pass


class NonUnitSlope(NotInvertible):
    pass


class NonUnitDenominator(NotInvertible):
    pass


class NoMatch(SupertraceError):
    pass


class WrongOrderStructure(SupertraceError):
    pass


class DlogFailure(SupertraceError):
    pass


class InconsistentResidues(SupertraceError):
    pass


class UnsupportedPrime(SupertraceError, ValueError):
    pass


class GiveUp(SupertraceError):
    pass
