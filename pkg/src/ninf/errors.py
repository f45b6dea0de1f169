"""Exception hierarchy shared by every module."""


class LatinError(Exception):
    """Base class for all errors raised by :mod:`ninf`."""


class NotLatin(LatinError, ValueError):
    def __init__(self, message, line=None, symbol=None):
        super().__init__(message)
        self.line = line
        self.symbol = symbol


class InvalidCycle(LatinError, ValueError):
    pass


class NotApplicable(LatinError, ValueError):
    pass


class BadShift(LatinError, ValueError):
    pass


class SameSymbol(LatinError, ValueError):
    pass


class BadDim(LatinError, ValueError):
    pass


class OrderTooLarge(LatinError, ValueError):
    pass


class BadOrder(LatinError, ValueError):
    pass


class OddOrder(BadOrder):
    pass


class ConstructionFailed(LatinError, RuntimeError):
    pass


class CertificationFailed(LatinError, RuntimeError):
    def __init__(self, clause, detail=""):
        super().__init__(f"{clause}: {detail}" if detail else clause)
        self.clause = clause
        self.detail = detail


class WitnessPropagationFailed(CertificationFailed):
    pass


class BudgetExhausted(LatinError, RuntimeError):
    pass


class UnsupportedOrder(LatinError, ValueError):
    pass


class NoSuchObject(UnsupportedOrder):
    pass
