"""Exception hierarchy shared by every qident module."""


class QidentError(Exception):
    pass


class DivisionByZero(QidentError, ZeroDivisionError):
    pass


class NotAUnit(QidentError, ArithmeticError):
    """Series reciprocal requested for a series with zero constant term."""


class ExponentOverflow(QidentError, OverflowError):
    pass


class InvalidIndex(QidentError, ValueError):
    pass


class InvalidInput(QidentError, ValueError):
    pass


class InvalidIntegrand(QidentError, ValueError):
    pass


class UnknownClaim(QidentError, KeyError):
    pass


class InvalidParams(QidentError, ValueError):
    pass


class InvalidSpec(QidentError, ValueError):
    pass


class PrecisionLoss(QidentError, ArithmeticError):
    pass


class ParseError(QidentError, ValueError):
    pass
