"""Exception hierarchy shared by all modules."""


class WronskFormsError(Exception):
    pass


class InversionOfZero(WronskFormsError, ZeroDivisionError):
    pass


class ZeroSeries(WronskFormsError, ValueError):
    """The series has no stored terms below its order."""


class InsufficientOrder(WronskFormsError):
    pass


class InvalidSpec(WronskFormsError, ValueError):
    pass


class NonCoprimeSpec(InvalidSpec):
    pass


class NotAVanishingCase(WronskFormsError, ValueError):
    pass


class IdentityFails(WronskFormsError):
    """An identity did not hold; ``first_failure`` holds ``(exponent, value)`` when known."""

    def __init__(self, message, first_failure=None):
        super().__init__(message)
        self.first_failure = first_failure


class ClassifierMismatch(WronskFormsError):
    pass


class NonzeroRemainder(WronskFormsError):
    pass


class WeightUnrepresentable(WronskFormsError, ValueError):
    pass


class NotPrime(WronskFormsError, ValueError):
    pass


class NotPIntegral(WronskFormsError, ValueError):
    pass


class ZeroPolynomial(WronskFormsError, ValueError):
    pass


class NotSquarefree(WronskFormsError, ValueError):
    pass


class NoSignChange(WronskFormsError, ValueError):
    pass
