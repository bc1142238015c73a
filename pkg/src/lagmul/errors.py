"""Exception types shared across the package."""


class LagmulError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(LagmulError, ZeroDivisionError):
    pass


class MixedFields(LagmulError, ValueError):
    pass


class MixedRings(LagmulError, ValueError):
    pass


class ZeroPolynomial(LagmulError, ValueError):
    """An operation needs a nonzero polynomial (degree, leading form, ...)."""


class NotHomogeneous(LagmulError, ValueError):
    pass


class ParseError(LagmulError, ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ReservedVariable(LagmulError, ValueError):
    pass


class TooManyConstraints(LagmulError, ValueError):
    pass


class InfiniteDimensional(LagmulError, ArithmeticError):
    """The quotient ring is not a finite-dimensional vector space."""


class UnitIdeal(LagmulError, ArithmeticError):
    pass


class ResourceLimit(LagmulError, RuntimeError):
    """The Groebner engine exceeded its term or basis-size guard."""


class NonIsolatedCritical(LagmulError, ArithmeticError):
    """The critical locus is positive dimensional."""


class KTooLarge(LagmulError, ValueError):
    pass


class ShapeMismatch(LagmulError, ValueError):
    pass


class NotGraded(LagmulError, ValueError):
    pass


class FieldTooLarge(LagmulError, ValueError):
    pass


class RationalFieldUnsupported(LagmulError, ValueError):
    pass


class HypothesesFail(LagmulError, ValueError):
    pass


class TruncationTooSmall(LagmulError, ValueError):
    def __init__(self, message: str, degree: int):
        super().__init__(message)
        self.degree = degree
