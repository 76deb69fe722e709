"""Exception types shared across the package."""


class Error(Exception):
    """Base class for all cdspec errors."""


class ParseError(Error):
    """Malformed field/exponent/element string or invalid CLI input."""


class NotPrime(Error):
    """Field characteristic is not a prime number."""


class ReducibleModulus(Error):
    """Supplied modulus polynomial is not irreducible (or not monic of the right degree)."""


class BudgetExceeded(Error):
    """Requested enumeration exceeds the configured work budget."""


class FieldTooLarge(BudgetExceeded):
    """Field order exceeds the configured enumeration cap."""


class DivisionByZero(Error, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class CharTwoUnsupported(Error):
    """Quadratic character is only defined in odd characteristic."""


class LeadingCoeffZero(Error):
    """Quadratic character sum requires a nonzero leading coefficient."""


class WrongCharacteristic(Error):
    """Operation is specific to another field characteristic."""


class Inapplicable(Error):
    """Closed-form predictor hypotheses do not hold for these parameters."""
