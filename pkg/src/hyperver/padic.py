"""Arithmetic modulo p^2 and Morita's p-adic Gamma function.

Only the first two p-adic digits are ever needed, so residues live in
``Z/p^2`` and ``Gamma_p`` is evaluated by its defining product on the
least nonnegative representative.  Continuity of ``Gamma_p`` (it is
1-Lipschitz) makes that representative's value correct modulo ``p^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DenominatorDivisibleByP, NotOneModFour, NotPrime
from .exact import as_rational


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class ModPSquare:
    p: int
    r: int

    def __post_init__(self):
        object.__setattr__(self, "r", self.r % (self.p * self.p))

    @property
    def modulus(self) -> int:
        return self.p * self.p

    def _other(self, o) -> int:
        if isinstance(o, ModPSquare):
            if o.p != self.p:
                raise ValueError("residues modulo different primes")
            return o.r
        if isinstance(o, Fraction):
            return embed_rational(o, self.p).r
        return int(o)

    def __add__(self, o):
        return ModPSquare(self.p, self.r + self._other(o))

    __radd__ = __add__

    def __sub__(self, o):
        return ModPSquare(self.p, self.r - self._other(o))

    def __rsub__(self, o):
        return ModPSquare(self.p, self._other(o) - self.r)

    def __neg__(self):
        return ModPSquare(self.p, -self.r)

    def __mul__(self, o):
        return ModPSquare(self.p, self.r * self._other(o))

    __rmul__ = __mul__

    def inverse(self) -> "ModPSquare":
        if self.r % self.p == 0:
            raise DenominatorDivisibleByP(f"{self.r} is not a unit modulo {self.p}^2")
        return ModPSquare(self.p, pow(self.r, -1, self.modulus))

    def __truediv__(self, o):
        return self * ModPSquare(self.p, self._other(o)).inverse()

    def __pow__(self, m: int):
        if m < 0:
            return self.inverse() ** (-m)
        return ModPSquare(self.p, pow(self.r, m, self.modulus))

    def __eq__(self, o):
        if isinstance(o, ModPSquare):
            return self.p == o.p and self.r == o.r
        if isinstance(o, int):
            return (self.r - o) % self.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.r))

    def __int__(self):
        return self.r

    def mod_p(self) -> int:
        return self.r % self.p

    def __repr__(self):
        return f"{self.r} (mod {self.p}^2)"


def embed_rational(q, p: int) -> ModPSquare:
    """Image of a p-unit-denominator rational in ``Z/p^2``."""
    q = as_rational(q)
    if q.denominator % p == 0:
        raise DenominatorDivisibleByP(f"denominator of {q} is divisible by {p}")
    m = p * p
    return ModPSquare(p, q.numerator * pow(q.denominator, -1, m))


def gamma_p(x, p: int) -> ModPSquare:
    """Morita ``Gamma_p(x)`` modulo ``p^2``: ``(-1)^r prod_{0<j<r, p not | j} j`` for ``r = x mod p^2``."""
    r = embed_rational(x, p).r
    m = p * p
    acc = 1
    for j in range(1, r):
        if j % p:
            acc = acc * j % m
    return ModPSquare(p, -acc if r % 2 else acc)


@dataclass
class CongruenceReport:
    p: int
    lhs: ModPSquare
    rhs: ModPSquare
    passed: bool


def he_lhs(p: int) -> ModPSquare:
    """Truncated sum ``sum_{k<=(p-1)/2} (6k+1)/4^k (1/2)_k^3 (1/4)_k/(1)_k^4`` reduced mod ``p^2``."""
    total = Fraction(0)
    t = Fraction(1)
    for k in range((p - 1) // 2 + 1):
        total += (6 * k + 1) * t
        t *= Fraction(2 * k + 1, 2) ** 3 * Fraction(4 * k + 1, 4) / ((k + 1) ** 4 * 4)
    return embed_rational(total, p)


def he_rhs(p: int) -> ModPSquare:
    """``(-1)^((p+3)/4) p Gamma_p(1/2) Gamma_p(1/4)^2`` mod ``p^2``."""
    sign = -1 if ((p + 3) // 4) % 2 else 1
    return ModPSquare(p, sign * p) * gamma_p(Fraction(1, 2), p) * gamma_p(Fraction(1, 4), p) ** 2


def he_congruence_check(p: int) -> CongruenceReport:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p % 4 != 1 or p < 5:
        raise NotOneModFour(f"{p} is not a prime congruent to 1 mod 4 (and at least 5)")
    lhs, rhs = he_lhs(p), he_rhs(p)
    return CongruenceReport(p, lhs, rhs, lhs == rhs)
