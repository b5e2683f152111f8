"""Exception types shared across the package."""


class OspZhuError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(OspZhuError, ValueError):
    """Bad user-facing input; the CLI maps these to exit code 2."""


class NotDivisible(OspZhuError, ArithmeticError):
    pass


class ZeroPolynomial(OspZhuError, ArithmeticError):
    pass


class WeightMismatch(InvalidInput):
    pass


class DoesNotFit(InvalidInput):
    pass


class InvalidLabels(InvalidInput):
    pass


class OutOfRange(InvalidInput):
    pass


class PoleAtParameter(OspZhuError, ArithmeticError):
    pass


class NotAdmissible(InvalidInput):
    pass


class OddSize(InvalidInput):
    pass


class CountMismatch(InvalidInput):
    pass


class NotPolynomial(OspZhuError):
    pass


class NonIntegerExponent(OspZhuError, ArithmeticError):
    pass


class NotScalar(OspZhuError):
    pass


class SectorMismatch(InvalidInput):
    pass


class NoConsistentConstant(OspZhuError):
    pass


class VerificationFailed(OspZhuError):
    pass
