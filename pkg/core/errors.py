"""
Exception hierarchy for HKLab
"""


class HKLabError(Exception):
    """Base class for every error raised by the library"""

    exit_code = 2


class DivisionByZero(HKLabError):
    """Inversion of zero in GF(p)"""


class CharMismatch(HKLabError):
    """Operands live over different prime fields"""


class ArityMismatch(HKLabError):
    """Monomials or polynomials with different variable counts"""


class NotDivisible(HKLabError):
    """Monomial quotient requested without divisibility"""


class ExponentOverflow(HKLabError):
    """An exponent reached the packed exponent limit"""

    exit_code = 3


class InfiniteLength(HKLabError):
    """The quotient is not Artinian, so its length is infinite"""


class UnitIdeal(HKLabError):
    """The ideal contains a unit"""


class NotFrobeniusPower(HKLabError):
    """q is not a positive power of the characteristic"""


class NotPrimary(HKLabError):
    """The ideal is not primary to the irrelevant maximal ideal"""


class ZeroDimensionalRing(HKLabError):
    """Hilbert-Kunz functions are only normalized for rings of positive dimension"""


class InsufficientSamples(HKLabError):
    """The estimation method needs more samples than were supplied"""


class NotLocalInput(HKLabError):
    """A generator has a nonzero constant term"""


class BadDims(HKLabError):
    """Dimension arguments violate the formula's ordering or range"""


class NotPrime(HKLabError):
    """The declared characteristic is not a prime"""


class UnknownVariable(HKLabError):
    """A polynomial mentions a variable its ring does not declare"""


class UnknownReference(HKLabError):
    """A job refers to a ring, ideal or module that was never declared"""


class SpecSyntaxError(HKLabError):
    """Malformed input in the ring specification language"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}" if line else message)

    def __reduce__(self):
        return (type(self), (self.message, self.line, self.column))
