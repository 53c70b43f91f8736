"""Truncated Laurent series in a single infinitesimal ``eps``.

A :class:`LaurentJet` stores ``c_v eps^v + ... + c_K eps^K`` and stands for
any function whose expansion agrees with it modulo ``eps^(K+1)``.  The
coefficients may be :class:`fractions.Fraction` (exact) or mpmath ``mpf``
(float); both go through the same code.

Known order is tracked the way p-adic precision is: multiplying by a jet of
positive valuation or dividing by one shifts how far the result is known.
That is what makes L'Hopital-type limits mechanical: divide by a vanishing
factor and read off the surviving coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZeroJet, OrderOutOfRange

DEFAULT_ORDER = 2


def _is_zero(c) -> bool:
    return c == 0


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Rational)) or hasattr(type(x), "__float__")


class LaurentJet:
    __slots__ = ("val", "coeffs", "order", "tag")

    def __init__(self, coeffs, val: int = 0, order: int | None = None, tag: str = "eps"):
        coeffs = [Fraction(c) if type(c) is int else c for c in coeffs]
        if order is None:
            order = val + len(coeffs) - 1
        # keep only coefficients that are known
        coeffs = coeffs[: max(order - val + 1, 0)]
        while coeffs and _is_zero(coeffs[0]):
            coeffs.pop(0)
            val += 1
        if not coeffs:
            val = order + 1
        self.val = val
        self.coeffs = tuple(coeffs)
        self.order = order
        self.tag = tag

    # -- constructors -------------------------------------------------
    @classmethod
    def variable(cls, base, order: int = DEFAULT_ORDER, tag: str = "eps") -> "LaurentJet":
        """The jet ``base + eps``."""
        return cls([base, 1], 0, order, tag)

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER, tag: str = "eps") -> "LaurentJet":
        if isinstance(c, LaurentJet):
            return c
        return cls([c], 0, order, tag)

    @classmethod
    def eps(cls, order: int = DEFAULT_ORDER, tag: str = "eps") -> "LaurentJet":
        return cls([1], 1, order, tag)

    # -- inspection ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, r: int):
        return self.coefficient(r)

    def coefficient(self, r: int):
        if r > self.order:
            raise OrderOutOfRange(f"coefficient eps^{r} requested, jet known to eps^{self.order}")
        i = r - self.val
        if i < 0 or i >= len(self.coeffs):
            return self._zero()
        return self.coeffs[i]

    def _one(self):
        return self._zero() + 1

    def _zero(self):
        if self.coeffs:
            return self.coeffs[0] * 0
        return Fraction(0)

    def dense(self, lo: int, hi: int) -> list:
        return [self.coefficient(r) for r in range(lo, hi + 1)]

    def base_value(self):
        """Constant coefficient; raises if the jet has a pole."""
        if self.val < 0:
            raise OrderOutOfRange("jet has a pole; no finite base value")
        return self.coefficient(0)

    def map(self, fn) -> "LaurentJet":
        return LaurentJet([fn(c) for c in self.coeffs], self.val, self.order, self.tag)

    def truncate(self, order: int) -> "LaurentJet":
        return LaurentJet(self.coeffs, self.val, min(order, self.order), self.tag)

    def chop(self, below: int, tol) -> "LaurentJet":
        """Zero the coefficients of ``eps^r`` for ``r < below`` whose size is under ``tol``.

        Float jets never cancel exactly; this turns a numerically vanishing
        head into a genuine valuation before a Laurent division.  A head
        coefficient at or above ``tol`` is left alone, so a real pole still
        shows up as a valuation mismatch downstream.
        """
        coeffs = list(self.coeffs)
        for i, c in enumerate(coeffs):
            r = self.val + i
            if r >= below or abs(c) >= tol:
                break
            coeffs[i] = c * 0
        return LaurentJet(coeffs, self.val, self.order, self.tag)

    def scale_variable(self, s) -> "LaurentJet":
        """Substitute ``eps -> s*eps``."""
        return LaurentJet(
            [c * s ** (self.val + i) for i, c in enumerate(self.coeffs)], self.val, self.order, self.tag
        )

    # -- arithmetic ---------------------------------------------------
    def _lift(self, other) -> "LaurentJet":
        if isinstance(other, LaurentJet):
            return other
        # scalars are exact to every order; ours is the binding one
        return LaurentJet([other], 0, max(self.order, 0), self.tag)

    def __add__(self, other):
        if not isinstance(other, LaurentJet):
            if not _is_scalar(other):
                return NotImplemented
            other = self._lift(other)
        order = min(self.order, other.order)
        lo = min(self.val, other.val)
        out = []
        for r in range(lo, order + 1):
            a = self.coeffs[r - self.val] if self.val <= r < self.val + len(self.coeffs) else 0
            b = other.coeffs[r - other.val] if other.val <= r < other.val + len(other.coeffs) else 0
            out.append(a + b)
        return LaurentJet(out, lo, order, self.tag)

    __radd__ = __add__

    def __neg__(self):
        return LaurentJet([-c for c in self.coeffs], self.val, self.order, self.tag)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentJet):
            if not _is_scalar(other):
                return NotImplemented
            if _is_zero(other):
                return LaurentJet([], 0, self.order, self.tag)
            return LaurentJet([c * other for c in self.coeffs], self.val, self.order, self.tag)
        val = self.val + other.val
        order = min(self.order + other.val, other.order + self.val)
        n = order - val + 1
        out = []
        for i in range(max(n, 0)):
            s = 0
            for j in range(max(0, i - len(other.coeffs) + 1), min(i, len(self.coeffs) - 1) + 1):
                s = s + self.coeffs[j] * other.coeffs[i - j]
            out.append(s)
        return LaurentJet(out, val, order, self.tag)

    __rmul__ = __mul__

    def reciprocal(self) -> "LaurentJet":
        if self.is_zero():
            raise DivisionByZeroJet(f"jet is zero to order eps^{self.order}")
        w = self.val
        u = self.coeffs
        n = self.order - w + 1  # number of known unit coefficients
        inv = [1 / u[0]]
        for i in range(1, n):
            s = 0
            for j in range(1, min(i, len(u) - 1) + 1):
                s = s + u[j] * inv[i - j]
            inv.append(-s * inv[0])
        return LaurentJet(inv, -w, self.order - 2 * w, self.tag)

    def __truediv__(self, other):
        if isinstance(other, LaurentJet):
            return self * other.reciprocal()
        if not _is_scalar(other):
            return NotImplemented
        if _is_zero(other):
            raise DivisionByZeroJet("division of a jet by scalar zero")
        return LaurentJet([c / other for c in self.coeffs], self.val, self.order, self.tag)

    def __rtruediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return self.reciprocal() * other

    def __pow__(self, m: int):
        if not isinstance(m, int):
            return NotImplemented
        if m < 0:
            return self.reciprocal() ** (-m)
        if m == 0:
            return LaurentJet([self._one()], 0, max(self.order, 0), self.tag)
        base = self
        result = None
        while m:
            if m & 1:
                result = base if result is None else result * base
            m >>= 1
            if m:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------
    def agrees_with(self, other, upto: int | None = None) -> bool:
        """Coefficientwise equality on the common known range."""
        other = self._lift(other)
        top = min(self.order, other.order)
        if upto is not None:
            top = min(top, upto)
        lo = min(self.val, other.val)
        return all(self.coefficient(r) == other.coefficient(r) for r in range(lo, top + 1))

    def __eq__(self, other):
        return self.agrees_with(other)

    __hash__ = None

    def __repr__(self):
        terms = ", ".join(f"{c}*{self.tag}^{self.val + i}" for i, c in enumerate(self.coeffs))
        return f"LaurentJet([{terms}] + O({self.tag}^{self.order + 1}))"


def jet_combine(a: LaurentJet, b: LaurentJet, op: str) -> LaurentJet:
    """Dispatch helper mirroring the four field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown jet operation {op!r}")


def taylor_coefficient(j, r: int):
    """Coefficient of ``eps^r``; equals ``D^r f / r!`` at the base point."""
    if not isinstance(j, LaurentJet):
        if r == 0:
            return j
        if r > 0:
            return j * 0
        raise OrderOutOfRange("negative order of a plain scalar")
    return j.coefficient(r)


def compose(inner: LaurentJet, series) -> LaurentJet:
    """Evaluate ``sum_j series[j] * (inner - inner_0)^j``.

    ``series`` holds the Taylor coefficients of an outer function about the
    constant term of ``inner``.
    """
    h = inner - inner.base_value()
    out = LaurentJet.constant(series[-1], inner.order, inner.tag)
    for a in reversed(series[:-1]):
        out = out * h + a
    return out
