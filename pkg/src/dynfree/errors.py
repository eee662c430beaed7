"""Exception types raised across the package."""


class DynFreeError(Exception):
    """Base class for all domain errors."""


class ZeroDenominator(DynFreeError, ZeroDivisionError):
    pass


class FieldMismatch(DynFreeError, ValueError):
    pass


class NotMoebius(DynFreeError, ValueError):
    pass


class UnsupportedMap(DynFreeError, ValueError):
    pass


class BudgetExceeded(DynFreeError, RuntimeError):
    """Raised when an enumeration would exceed its element or step budget.

    ``partial`` carries whatever was computed before the cap was hit.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotFixed(DynFreeError, ValueError):
    pass


class RootUnavailable(DynFreeError, ValueError):
    pass


class CharacteristicDividesDegree(DynFreeError, ValueError):
    pass


class NonzeroConstantTerm(DynFreeError, ValueError):
    pass


class NotInvertible(DynFreeError, ValueError):
    pass


class TableTooShort(DynFreeError, ValueError):
    pass


class AllConstant(DynFreeError, ValueError):
    pass


class PrecisionExhausted(DynFreeError, ArithmeticError):
    pass


class WordIndexError(DynFreeError, IndexError):
    pass


class ParseError(DynFreeError, ValueError):
    def __init__(self, position, expected, source=""):
        self.position = position
        self.expected = expected
        self.source = source
        super().__init__(f"parse error at position {position}: expected {expected}")
