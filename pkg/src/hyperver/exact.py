"""Shifted factorials and generalized harmonic numbers.

Everything here is polymorphic over the scalar kind: ``Fraction`` for exact
work, mpmath ``mpf`` for floats and :class:`~hyperver.jets.LaurentJet` for
derivative bookkeeping.  ``fractions.Fraction`` already normalizes eagerly
(``gcd == 1``, positive denominator), so it serves as the big rational type.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PoleInSum
from .jets import LaurentJet

BigRational = Fraction


def as_rational(x) -> Fraction:
    """Parse ``3``, ``"3/4"`` or a Fraction into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def _vanishes(x) -> bool:
    if isinstance(x, LaurentJet):
        return x.val > 0 or x.is_zero()
    return x == 0


def pochhammer(x, m: int):
    """Rising factorial ``(x)_m = x (x+1) ... (x+m-1)``; ``(x)_0 = 1``."""
    if m < 0:
        raise ValueError("pochhammer needs a nonnegative length")
    if isinstance(x, int):
        x = Fraction(x)
    if m == 0:
        if isinstance(x, LaurentJet):
            return LaurentJet.constant(x._one(), x.order, x.tag)
        return x * 0 + 1
    out = x
    for j in range(1, m):
        out = (x + j) * out
    return out


def harmonic(n: int, order: int, x=0):
    """``H_n^{(order)}(x) = sum_{k=1}^n 1/(x+k)^order``."""
    if order < 1:
        raise ValueError("harmonic order must be positive")
    if isinstance(x, int):
        x = Fraction(x)
    total = 0
    for k in range(1, n + 1):
        d = x + k
        if _vanishes(d):
            raise PoleInSum(f"x + {k} vanishes in H_{n}^({order})({x})")
        total = total + 1 / d**order
    if n == 0 and isinstance(x, LaurentJet):
        return LaurentJet([], 0, x.order, x.tag)
    if n == 0:
        return x * 0
    return total


class HarmonicCache:
    """Incrementally extended ladder ``H_1^{(l)}(x), H_2^{(l)}(x), ...``."""

    def __init__(self, order: int, x=0):
        self.order = order
        self.x = Fraction(x) if isinstance(x, int) else x
        self.values = [x * 0 if not isinstance(x, int) else Fraction(0)]

    def __len__(self):
        return len(self.values) - 1

    def extend(self, n: int) -> None:
        for j in range(len(self.values), n + 1):
            d = self.x + j
            if _vanishes(d):
                raise PoleInSum(f"x + {j} vanishes in harmonic ladder")
            self.values.append(self.values[-1] + 1 / d**self.order)

    def __call__(self, n: int):
        if n >= len(self.values):
            self.extend(n)
        return self.values[n]


def mixed_harmonic(n: int, offsets) -> object:
    """``sum_{i=1}^n prod_j (x_j + i)^(-p_j)`` for ``offsets = ((x_1, p_1), ...)``."""
    total = 0
    for i in range(1, n + 1):
        den = 1
        for x, p in offsets:
            d = (Fraction(x) if isinstance(x, int) else x) + i
            if _vanishes(d):
                raise PoleInSum(f"x + {i} vanishes in a mixed harmonic sum")
            den = d**p * den
        total = total + 1 / den
    if isinstance(total, int):
        return Fraction(total)
    return total
