class QWhittakerError(Exception):
    pass


class UnsupportedType(QWhittakerError, ValueError):
    pass


class NotDominant(QWhittakerError, ValueError):
    pass


class PoleAtZero(QWhittakerError, ArithmeticError):
    pass


class NotWInvariant(QWhittakerError, ValueError):
    pass


class NonTermination(QWhittakerError, RuntimeError):
    pass


class InvariantViolation(QWhittakerError, RuntimeError):
    """An internal consistency check failed; this is a bug, not bad input."""


class MissingEntry(QWhittakerError, KeyError):
    pass


class NonTriangular(QWhittakerError, RuntimeError):
    pass


class SingularCoefficient(QWhittakerError, ZeroDivisionError):
    pass


class NotPolynomial(QWhittakerError, ValueError):
    def __init__(self, message, weight=None, monomial=None):
        super().__init__(message)
        self.weight = weight
        self.monomial = monomial
