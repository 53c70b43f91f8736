"""Exception hierarchy shared by all hyperver modules."""


class HyperverError(Exception):
    """Base class for every error raised by this package."""


class PoleInSum(HyperverError, ZeroDivisionError):
    """A harmonic-type sum hit a vanishing denominator."""


class PoleAtIndex(HyperverError, ZeroDivisionError):
    """A term recurrence hit a vanishing denominator factor."""

    def __init__(self, k, detail=""):
        self.k = k
        super().__init__(f"pole at summation index {k}" + (f": {detail}" if detail else ""))


class DivisionByZeroJet(HyperverError, ZeroDivisionError):
    """Division by a jet that is zero to its known order."""


class OrderOutOfRange(HyperverError, IndexError):
    """Requested jet coefficient lies beyond the known truncation order."""


class ValuationMismatch(HyperverError):
    """Two jets that should agree have different pole orders."""


class DomainError(HyperverError, ValueError):
    """Argument outside the domain of a numeric routine."""


class NotGeometric(HyperverError):
    """No ratio bound below one could be certified for a series."""


class NotAlternating(HyperverError):
    """Series handed to the alternating accelerator does not alternate."""


class LadderTooShort(HyperverError, ValueError):
    """Richardson extrapolation needs at least two partial sums."""


class NoConvergence(HyperverError):
    """An iterative method exhausted its budget without meeting tolerance."""


class DenominatorDivisibleByP(HyperverError, ValueError):
    """Rational is not a p-adic unit-denominator number."""


class NotOneModFour(HyperverError, ValueError):
    pass


class NotPrime(HyperverError, ValueError):
    pass


class UnknownIdentity(HyperverError, KeyError):
    pass


class ParamOutOfDomain(HyperverError, ValueError):
    pass
