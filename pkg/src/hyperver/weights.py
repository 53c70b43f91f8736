"""Data describing the weight ``w(k)`` multiplying a hypergeometric term.

A :class:`WeightSpec` is a sum of :class:`WeightTerm` objects.  Each term is
a rational function of ``k`` times a product of harmonic combinations, and a
harmonic combination is a linear combination of :class:`HarmonicPart`
ladders

    S_m = sum_{i=1}^{m} prod_j (x_j + i)^(-p_j),     m = k or 2k.

With a single factor this is ``H_m^{(p)}(x)``; two factors give the mixed
sums such as ``sum 1/(i (1-d+i))`` that appear after dividing derivative
identities by a vanishing parameter combination.

The closed-form rational weights (alpha, beta, mu, nu, theta, lambda, omega)
are written once as ordinary arithmetic and evaluated either at an integer
``k`` or at the symbolic variable :data:`K`, which yields a :class:`RatFn`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PoleInSum
from .jets import LaurentJet


def _scalar_mag(c) -> float:
    if isinstance(c, LaurentJet):
        return max((_scalar_mag(x) for x in c.coeffs), default=0.0)
    return abs(float(c))


def _strip(coeffs: tuple) -> tuple:
    coeffs = [Fraction(c) if type(c) is int else c for c in coeffs]
    while len(coeffs) > 1 and _is_exact_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def _is_exact_zero(c) -> bool:
    if isinstance(c, LaurentJet):
        return c.is_zero()
    return c == 0


def _padd(p, q):
    n = max(len(p), len(q))
    return tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def _pmul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return tuple(out)


def _peval(p, k):
    acc = 0
    for c in reversed(p):
        acc = acc * k + c
    return acc


class RatFn:
    """Unreduced quotient of two polynomials in ``k`` (coefficients low to high)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        self.num = _strip(tuple(num))
        self.den = _strip(tuple(den))

    @classmethod
    def var(cls) -> "RatFn":
        return cls((0, 1))

    @classmethod
    def lift(cls, x) -> "RatFn":
        return x if isinstance(x, RatFn) else cls((x,))

    def __add__(self, other):
        o = RatFn.lift(other)
        if self.den == o.den:
            return RatFn(_padd(self.num, o.num), self.den)
        return RatFn(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFn(tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        return self + (-RatFn.lift(other))

    def __rsub__(self, other):
        return RatFn.lift(other) - self

    def __mul__(self, other):
        o = RatFn.lift(other)
        return RatFn(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFn.lift(other)
        return RatFn(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        return RatFn.lift(other) / self

    def __pow__(self, m: int):
        out = RatFn((1,))
        for _ in range(m):
            out = out * self
        return out

    def __call__(self, k):
        d = _peval(self.den, k)
        if isinstance(k, int) and _is_exact_zero(d):
            raise PoleInSum(f"weight denominator vanishes at k = {k}")
        return _peval(self.num, k) / d

    def map(self, fn) -> "RatFn":
        return RatFn(tuple(fn(c) for c in self.num), tuple(fn(c) for c in self.den))

    @property
    def degree(self) -> int:
        return (len(self.num) - 1) - (len(self.den) - 1)

    def envelope(self) -> tuple[float, int, int]:
        """Return ``(C, D, k1)`` with ``|r(k)| <= C k^D`` for every ``k >= k1``."""
        num = [_scalar_mag(c) for c in self.num]
        den = [_scalar_mag(c) for c in self.den]
        lead = den[-1]
        if lead == 0:
            raise PoleInSum("weight denominator has a vanishing leading coefficient")
        m = len(den) - 1

        def lower_tail(k: float) -> float:
            # sum_{i<m} |d_i| k^(i-m): decreasing in k
            return sum(d * k ** (i - m) for i, d in enumerate(den[:-1]))

        # smallest k1 with |den(k)| >= lead k^m / 2 for every k >= k1
        hi = 1
        while lower_tail(hi) > lead / 2:
            hi *= 2
        lo = max(1, hi // 2)
        while lo < hi:
            mid = (lo + hi) // 2
            if lower_tail(mid) <= lead / 2:
                hi = mid
            else:
                lo = mid + 1
        k1 = hi
        dn = len(num) - 1
        c = 2 * sum(x * float(k1) ** (i - dn) for i, x in enumerate(num)) / lead
        return c, self.degree, k1

    def __repr__(self):
        return f"RatFn({self.num!r} / {self.den!r})"


K = RatFn.var()


@dataclass(frozen=True)
class HarmonicPart:
    """``coef * sum_{i=1}^{m} prod_j (x_j + i)^(-p_j)`` with ``m = k`` or ``2k``."""

    coef: object
    offsets: tuple  # ((x, p), ...)
    double: bool = False

    @property
    def weight_order(self) -> int:
        return sum(p for _, p in self.offsets)

    def summand(self, i: int):
        out = 1
        for x, p in self.offsets:
            d = x + i
            if _is_exact_zero(d) or (isinstance(d, LaurentJet) and d.val > 0):
                raise PoleInSum(f"harmonic summand vanishes at i = {i}")
            out = out * d**p
        return 1 / out if not isinstance(out, int) else Fraction(1, out)

    def map(self, fn) -> "HarmonicPart":
        return HarmonicPart(fn(self.coef), tuple((fn(x), p) for x, p in self.offsets), self.double)

    def envelope(self) -> tuple[float, int]:
        """Return ``(B, D)``: the ladder stays below ``B * max(m,1)^D``."""
        ell = self.weight_order
        xs = [_scalar_mag(x) for x, _ in self.offsets]
        i0 = math.ceil(2 * max(xs, default=0.0)) + 1
        head = 0.0
        for i in range(1, i0 + 1):
            prod = 1.0
            for (x, p), xm in zip(self.offsets, xs):
                base = x.base_value() if isinstance(x, LaurentJet) else x
                prod *= abs(float(base) + i) ** p
            head += 1.0 / prod if prod else 0.0
        mag = _scalar_mag(self.coef)
        # for i > i0 every factor exceeds i/2
        if ell >= 2:
            return mag * (head + 2.0**ell / ((ell - 1) * i0 ** (ell - 1))), 0
        return mag * (head + 2.0), 1


def H(order: int, x=0, coef=1, double: bool = False) -> HarmonicPart:
    """``coef * H_m^{(order)}(x)`` with ``m = 2k`` when ``double``."""
    return HarmonicPart(coef, ((_exact(x), order),), double)


def cross(x, y, p: int = 1, q: int = 1, coef=1, double: bool = False) -> HarmonicPart:
    """``coef * sum_{i<=m} 1/((x+i)^p (y+i)^q)``."""
    return HarmonicPart(coef, ((_exact(x), p), (_exact(y), q)), double)


def _exact(x):
    return Fraction(x) if isinstance(x, int) else x


@dataclass(frozen=True)
class WeightTerm:
    factor: RatFn = field(default_factory=lambda: RatFn((1,)))
    combos: tuple = ()  # product of tuples of HarmonicPart

    def map(self, fn) -> "WeightTerm":
        return WeightTerm(self.factor.map(fn), tuple(tuple(p.map(fn) for p in c) for c in self.combos))


@dataclass(frozen=True)
class WeightSpec:
    terms: tuple = (WeightTerm(),)
    label: str = ""

    def map(self, fn) -> "WeightSpec":
        return WeightSpec(tuple(t.map(fn) for t in self.terms), self.label)

    def envelope(self) -> tuple:
        """Return ``(bound, D, k1)``: ``|w(k)| <= bound(k)`` for ``k >= k1`` and
        ``bound(k+1)/bound(k) <= (1 + 1/k)^D``."""
        pieces = []
        k1 = 1
        dmax = 0
        for t in self.terms:
            c, d, kk = t.factor.envelope()
            k1 = max(k1, kk)
            combo_env = []
            for combo in t.combos:
                env = [(p.envelope(), 2 if p.double else 1) for p in combo]
                combo_env.append(env)
                d += max((e[0][1] for e in env), default=0)
            pieces.append((c, t.factor.degree, combo_env))
            dmax = max(dmax, d)

        def bound(k: int) -> float:
            total = 0.0
            for c, deg, combo_env in pieces:
                v = c * float(k) ** deg
                for env in combo_env:
                    v *= sum(b * (mult * k) ** dd for (b, dd), mult in env)
                total += v
            return total

        return bound, dmax, k1


UNIT = WeightSpec()


def poly(*coeffs) -> RatFn:
    return RatFn(tuple(_exact(c) for c in coeffs))


def weight(*terms, label: str = "") -> WeightSpec:
    """Build a spec from ``(factor, combo, combo, ...)`` tuples or bare factors."""
    out = []
    for t in terms:
        if isinstance(t, WeightTerm):
            out.append(t)
            continue
        if not isinstance(t, tuple):
            t = (t,)
        factor = RatFn.lift(_exact(t[0]))
        combos = tuple(tuple(c) if isinstance(c, (list, tuple)) else (c,) for c in t[1:])
        out.append(WeightTerm(factor, combos))
    return WeightSpec(tuple(out), label)


# ---------------------------------------------------------------------------
# closed-form rational weights


def alpha(a, b, c, d, e, k):
    s = 1 + 2 * a - b - c - d - e
    return (1 + 2 * a - b - c - d + 2 * k) * (a - e + k) / (s + k) + (1 + a - b - c + k) * (
        1 + a - b - d + k
    ) * (e + k) / ((1 + a - b + 2 * k) * (s + k))


def beta(a, c, d, e, k):
    return (1 + a - d + 2 * k) * (a + d - e + k) + (1 - c + k) * (1 + c - d + k) * (e - d + k) / (1 + 2 * k)


def mu(a, b, c, d, e, k):
    s = 1 + 2 * a - b - c - d - e
    first = (1 + 2 * a - b - c - d + 3 * k) * (a - e + 2 * k) / (s + 2 * k)
    second = (
        (e + k)
        * (1 + a - b - c + k)
        / ((1 + a - b + 2 * k) * (1 + a - d + 2 * k))
        * (1 + a - b - d + k)
        * (1 + a - c - d + k)
        * (2 + 2 * a - b - d - e + 3 * k)
        / ((s + 2 * k) * (s + 1 + 2 * k))
    )
    third = (
        (c + k)
        * (e + k)
        * (1 + a - b - c + k)
        * (1 + a - b - d + k)
        / ((1 + a - b + 2 * k) * (1 + a - c + 2 * k) * (1 + a - d + 2 * k) * (1 + a - e + 2 * k))
        * (1 + a - b - e + k)
        * (1 + a - c - d + k)
        * (1 + a - d - e + k)
        / ((s + 2 * k) * (s + 1 + 2 * k))
    )
    return first + second + third


def nu(a, b, c, d, k):
    first = 2 * k * (1 + 2 * a - b - c - d + 3 * k) / a
    second = (
        (a + k)
        * (1 + a - b - c + k)
        / (a * (1 + a - b + 2 * k))
        * (1 + a - b - d + k)
        * (1 + a - c - d + k)
        * (2 + a - b - d + 3 * k)
        / ((1 + a - d + 2 * k) * (2 + a - b - c - d + 2 * k))
    )
    third = (
        (a + k)
        * (c + k)
        * (1 - b + k)
        * (1 - d + k)
        / (a * (1 + 2 * k) * (1 + a - b + 2 * k) * (1 + a - c + 2 * k))
        * (1 + a - b - c + k)
        * (1 + a - b - d + k)
        * (1 + a - c - d + k)
        / ((1 + a - d + 2 * k) * (2 + a - b - c - d + 2 * k))
    )
    return first + second + third


def theta(a, b, c, d, k):
    first = 2 * k * (1 + 2 * a - d + 3 * k) / a
    second = (
        (a + k)
        * (1 + a - c + k)
        / (a * (1 + a - b + 2 * k))
        * (1 + a - b + c - d + k)
        * (1 + a + b - d + k)
        * (2 + a - b + c - d + 3 * k)
        / ((1 + a + c - d + 2 * k) * (2 + a - d + 2 * k))
    )
    third = (
        (a + k)
        * (c - b + k)
        * (1 - b + k)
        * (1 + c - d + k)
        / (a * (1 + 2 * k) * (1 + a - b + 2 * k) * (1 + a + b - c + 2 * k))
        * (1 + a - c + k)
        * (1 + a - b + c - d + k)
        * (1 + a + b - d + k)
        / ((1 + a + c - d + 2 * k) * (2 + a - d + 2 * k))
    )
    return first + second + third


def lam(c, k):
    return (
        2 * k * (1 + 6 * k)
        + (3 - 2 * c + 2 * k) * (2 * c - 1 + 2 * k) * (1 + 2 * c + 6 * k) / (16 * (c + 2 * k))
        + (3 - 2 * c + 2 * k) * (2 * c - 1 + 2 * k) ** 3 / (64 * (c + 2 * k) * (2 - c + 2 * k))
    )


def omega(c, k):
    return (
        (3 - 2 * c + 2 * k) ** 2
        * (19 + 44 * c - 20 * c * c + 164 * k + 8 * c * k + 172 * k * k)
        / (64 * (1 + 2 * k) * (c + 2 * k) * (2 - c + 2 * k) ** 2)
    )


NAMED_WEIGHTS = {
    "alpha": alpha,
    "beta": beta,
    "mu": mu,
    "nu": nu,
    "theta": theta,
    "lambda": lam,
    "omega": omega,
}


def named(name: str, *params) -> RatFn:
    """Rational function of ``k`` for one of the closed-form weights."""
    params = tuple(_exact(p) for p in params)
    return RatFn.lift(NAMED_WEIGHTS[name](*params, K))
