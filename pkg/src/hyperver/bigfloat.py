"""Arbitrary-precision kernel: constants, Hurwitz zeta, polygamma, Gamma.

Floating values are mpmath ``mpf`` numbers owned by a private
``MPContext`` per :class:`EvalContext`, so two contexts at different
precisions can be used side by side (and from different threads).  The
elementary functions (sqrt, exp, ln, sin, atan) come from that context;
pi, Bernoulli numbers, the Euler-Maclaurin Hurwitz zeta, polygamma,
digamma and the Stirling Gamma are implemented here.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property

from mpmath.ctx_mp import MPContext

from .errors import DomainError
from .exact import pochhammer
from .jets import LaurentJet, compose

DEFAULT_PREC = 192
DEFAULT_GUARD = 32


class EvalContext:
    """Precision policy plus a lazily filled constants table.

    ``prec`` is the target precision in bits; arithmetic runs at
    ``prec + guard``.
    """

    def __init__(self, prec: int = DEFAULT_PREC, guard: int = DEFAULT_GUARD):
        if prec < 64:
            raise ValueError("precision must be at least 64 bits")
        self.prec = prec
        self.guard = guard
        self.mp = MPContext()
        self.mp.prec = prec + guard
        self._cache: dict = {}

    def __repr__(self):
        return f"EvalContext(prec={self.prec}, guard={self.guard})"

    @property
    def wp(self) -> int:
        return self.prec + self.guard

    @property
    def eps(self):
        """Relative resolution ``2^-prec`` of the target precision."""
        return self.mp.ldexp(self.mp.one, -self.prec)

    def cross_check(self) -> "EvalContext":
        """Context used for the two-precision recomputation contract."""
        return EvalContext(self.prec + 64, self.guard)

    def mpf(self, x):
        """Convert an int, Fraction, decimal string or mpf to this context."""
        if isinstance(x, Fraction):
            return self.mp.mpf(x.numerator) / x.denominator
        if isinstance(x, LaurentJet):
            return x.map(self.mpf)
        return self.mp.mpf(x)

    def nstr(self, x, digits: int | None = None, **kw) -> str:
        if digits is None:
            digits = self.digits
        return self.mp.nstr(x, digits, **kw)

    @property
    def digits(self) -> int:
        return int(self.prec * math.log10(2))

    @cached_property
    def constants(self) -> "ConstantsTable":
        return ConstantsTable(self)


# ---------------------------------------------------------------------------
# elementary functions and pi


def elementary(x, f: str, ctx: EvalContext):
    mp = ctx.mp
    x = ctx.mpf(x)
    if f == "sqrt":
        if x < 0:
            raise DomainError("sqrt of a negative number")
        return mp.sqrt(x)
    if f == "ln":
        if x <= 0:
            raise DomainError("ln of a nonpositive number")
        return mp.ln(x)
    if f == "exp":
        return mp.exp(x)
    if f == "sin":
        return mp.sin(x)
    if f == "cos":
        return mp.cos(x)
    if f == "atan":
        return mp.atan(x)
    raise ValueError(f"unknown elementary function {f!r}")


def arcsin(x, ctx: EvalContext):
    """``asin(x) = atan(x / sqrt(1 - x^2))`` for ``|x| < 1``."""
    x = ctx.mpf(x)
    if not -1 < x < 1:
        raise DomainError("arcsin argument must lie in (-1, 1)")
    return elementary(x / elementary(1 - x * x, "sqrt", ctx), "atan", ctx)


def pi(ctx: EvalContext):
    """Gauss-Legendre AGM iteration."""
    if "pi" in ctx._cache:
        return ctx._cache["pi"]
    mp = ctx.mp
    a = mp.one
    b = 1 / mp.sqrt(2)
    t = mp.mpf(0.25)
    p = mp.one
    tol = mp.ldexp(mp.one, -ctx.wp // 2 - 4)
    while abs(a - b) > tol:
        a, b, t, p = (a + b) / 2, mp.sqrt(a * b), t - p * ((a - b) / 2) ** 2, 2 * p
    # one more step to square the error past the tolerance
    a, b, t = (a + b) / 2, mp.sqrt(a * b), t - p * ((a - b) / 2) ** 2
    val = (a + b) ** 2 / (4 * t)
    ctx._cache["pi"] = val
    return val


# ---------------------------------------------------------------------------
# Bernoulli numbers

_BERNOULLI: list[Fraction] = [Fraction(1)]


def _bernoulli_all(n: int) -> Fraction:
    # sum_{k=0}^{m} C(m+1, k) B_k = 0
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        s = Fraction(0)
        c = 1  # C(m+1, 0)
        for k in range(m):
            s += c * _BERNOULLI[k]
            c = c * (m + 1 - k) // (k + 1)
        _BERNOULLI.append(-s / (m + 1))
    return _BERNOULLI[n]


def bernoulli(n: int) -> Fraction:
    """Exact ``B_n`` (convention ``B_1 = -1/2``)."""
    if n < 0:
        raise ValueError("negative Bernoulli index")
    if n > 1 and n % 2:
        return Fraction(0)
    return _bernoulli_all(n)


# ---------------------------------------------------------------------------
# Hurwitz zeta and polygamma


def _positive(x, ctx, what):
    xv = ctx.mpf(x)
    if xv <= 0:
        raise DomainError(f"{what} needs a positive argument, got {x}")
    return xv


def _em_cutoff(ctx: EvalContext, extra: int = 0) -> int:
    # the Bernoulli tail bottoms out near exp(-2 pi N)
    return int(ctx.wp * math.log(2) / (2 * math.pi)) + 4 + extra


def hurwitz_zeta(s: int, a, ctx: EvalContext):
    """``zeta(s, a) = sum_{k>=0} (a+k)^-s`` by Euler-Maclaurin.

    The remainder after the last Bernoulli correction is bounded by the
    first omitted correction (the summand has derivatives of fixed sign),
    so the loop stops once that correction drops below ``2^-(wp)`` relative.
    """
    if not isinstance(s, int) or s < 2:
        raise DomainError("hurwitz_zeta needs an integer s >= 2")
    key = ("zeta", s, a if isinstance(a, Fraction) else None)
    if key[2] is not None and key in ctx._cache:
        return ctx._cache[key]
    mp = ctx.mp
    av = _positive(a, ctx, "hurwitz_zeta")
    n_cut = _em_cutoff(ctx, s)
    while True:
        head = mp.fsum((av + k) ** (-s) for k in range(n_cut))
        x = av + n_cut
        tail = x ** (1 - s) / (s - 1) + x ** (-s) / 2
        tol = abs(head + tail) * mp.ldexp(mp.one, -ctx.wp - 4)
        # rising factorial s(s+1)...(s+2j-2) and x^(-s-2j+1), updated in place
        rise = mp.mpf(s)
        xpow = x ** (-s - 1)
        inv_x2 = 1 / (x * x)
        fact = 2  # (2j)!
        prev = None
        converged = False
        for j in range(1, 4 * n_cut):
            term = ctx.mpf(bernoulli(2 * j)) / fact * rise * xpow
            if abs(term) < tol:
                converged = True
                break
            if prev is not None and abs(term) > abs(prev):
                break
            tail += term
            prev = term
            rise *= (s + 2 * j - 1) * (s + 2 * j)
            xpow *= inv_x2
            fact *= (2 * j + 1) * (2 * j + 2)
        if converged:
            break
        n_cut *= 2
    val = head + tail
    if key[2] is not None:
        ctx._cache[key] = val
    return val


def polygamma(m: int, x, ctx: EvalContext):
    """``psi_m(x) = (-1)^(m+1) m! zeta(m+1, x)`` for ``m >= 1``."""
    if m < 1:
        raise DomainError("polygamma order must be >= 1; use digamma for m = 0")
    _positive(x, ctx, "polygamma")
    sign = -1 if m % 2 == 0 else 1
    return sign * math.factorial(m) * hurwitz_zeta(m + 1, x, ctx)


def digamma(x, ctx: EvalContext):
    """Asymptotic series after shifting the argument upward."""
    key = ("digamma", x) if isinstance(x, Fraction) else None
    if key and key in ctx._cache:
        return ctx._cache[key]
    mp = ctx.mp
    xv = _positive(x, ctx, "digamma")
    shift = max(0, _em_cutoff(ctx) - int(xv))
    acc = -mp.fsum(1 / (xv + k) for k in range(shift))
    y = xv + shift
    acc += mp.ln(y) - 1 / (2 * y)
    tol = mp.ldexp(mp.one, -ctx.wp - 4) * max(abs(acc), mp.one)
    inv_y2 = 1 / (y * y)
    ypow = inv_y2
    for j in range(1, 8 * shift + 64):
        term = ctx.mpf(bernoulli(2 * j)) / (2 * j) * ypow
        acc -= term
        if abs(term) < tol:
            break
        ypow *= inv_y2
    if key:
        ctx._cache[key] = acc
    return acc


# ---------------------------------------------------------------------------
# Gamma


def log_gamma(x, ctx: EvalContext):
    """Stirling series for ``ln Gamma`` after raising the argument."""
    mp = ctx.mp
    xv = _positive(x, ctx, "log_gamma")
    shift = max(0, _em_cutoff(ctx) - int(xv))
    y = xv + shift
    acc = (y - mp.mpf(0.5)) * mp.ln(y) - y + mp.ln(2 * pi(ctx)) / 2
    tol = mp.ldexp(mp.one, -ctx.wp - 4) * max(abs(acc), mp.one)
    inv_y2 = 1 / (y * y)
    ypow = 1 / y
    for j in range(1, 8 * shift + 64):
        term = ctx.mpf(bernoulli(2 * j)) / (2 * j * (2 * j - 1)) * ypow
        acc += term
        if abs(term) < tol:
            break
        ypow *= inv_y2
    if shift:
        acc -= mp.ln(pochhammer(xv, shift))
    return acc


def gamma(x, ctx: EvalContext):
    """``Gamma(x)`` for ``x > 0``; positive integers are returned exactly."""
    if isinstance(x, Fraction) and x.denominator == 1 and x > 0:
        return ctx.mpf(math.factorial(x.numerator - 1))
    if isinstance(x, int) and x > 0:
        return ctx.mpf(math.factorial(x - 1))
    key = ("gamma", x) if isinstance(x, Fraction) else None
    if key and key in ctx._cache:
        return ctx._cache[key]
    _positive(x, ctx, "gamma")
    val = ctx.mp.exp(log_gamma(x, ctx))
    if key:
        ctx._cache[key] = val
    return val


# ---------------------------------------------------------------------------
# jets of analytic functions


def _digamma_series(x, order: int, ctx: EvalContext) -> list:
    coeffs = [digamma(x, ctx)]
    for j in range(1, order + 1):
        coeffs.append(polygamma(j, x, ctx) / math.factorial(j))
    return coeffs


def _exp_series(h: list, order: int) -> list:
    """Coefficients of ``exp(sum_{j>=1} h[j] eps^j)`` up to ``eps^order``."""
    # e' = h' e  =>  n e_n = sum_{j=1}^{n} j h_j e_{n-j}
    e = [h[0] * 0 + 1]
    for n in range(1, order + 1):
        e.append(sum(j * h[j] * e[n - j] for j in range(1, n + 1)) / n)
    return e


def analytic_jet(f: str, x, order: int, ctx: EvalContext) -> LaurentJet:
    """Taylor jet of ``f(x + eps)`` for ``f`` in {"gamma", "digamma"}."""
    if order > 3:
        raise ValueError("analytic jets are supported up to order 3")
    _positive(x, ctx, f)
    if f == "digamma":
        return LaurentJet(_digamma_series(x, order, ctx), 0, order)
    if f == "gamma":
        if order == 0:
            return LaurentJet([gamma(x, ctx)], 0, 0)
        lg = [ctx.mp.zero] + [c / j for j, c in enumerate(_digamma_series(x, order - 1, ctx), start=1)]
        g0 = gamma(x, ctx)
        return LaurentJet([g0 * c for c in _exp_series(lg, order)], 0, order)
    raise ValueError(f"no jet lift for {f!r}")


def _lift(fn_name: str, arg, ctx: EvalContext):
    if isinstance(arg, LaurentJet):
        base = arg.base_value()
        series = analytic_jet(fn_name, base, arg.order, ctx).coeffs
        series = list(series) + [ctx.mp.zero] * (arg.order + 1 - len(series))
        return compose(arg.map(ctx.mpf), series)
    if fn_name == "gamma":
        return gamma(arg, ctx)
    return digamma(arg, ctx)


def gamma_of(arg, ctx: EvalContext):
    """Gamma of a scalar or of a jet (composition with the Taylor jet)."""
    return _lift("gamma", arg, ctx)


def digamma_of(arg, ctx: EvalContext):
    return _lift("digamma", arg, ctx)


# ---------------------------------------------------------------------------
# constants


class ConstantsTable:
    """Named constants at the context precision, computed on first access."""

    NAMES = (
        "pi",
        "ln2",
        "euler_gamma",
        "zeta3",
        "catalan",
        "gamma_quarter",
        "psi1_quarter",
        "psi1_three_quarters",
        "psi2_one",
        "psi2_half",
        "psi2_three_quarters",
    )

    def __init__(self, ctx: EvalContext):
        self.ctx = ctx
        self._values: dict = {}

    def __getattr__(self, name):
        if name.startswith("_") or name not in self.NAMES:
            raise AttributeError(name)
        if name not in self._values:
            self._values[name] = getattr(self, "_compute_" + name)()
        return self._values[name]

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.NAMES}

    def _compute_pi(self):
        return pi(self.ctx)

    def _compute_ln2(self):
        return elementary(2, "ln", self.ctx)

    def _compute_euler_gamma(self):
        return -digamma(Fraction(1), self.ctx)

    def _compute_zeta3(self):
        return hurwitz_zeta(3, Fraction(1), self.ctx)

    def _compute_catalan(self):
        q = Fraction(1, 4)
        return (hurwitz_zeta(2, q, self.ctx) - hurwitz_zeta(2, 1 - q, self.ctx)) / 16

    def _compute_gamma_quarter(self):
        return gamma(Fraction(1, 4), self.ctx)

    def _compute_psi1_quarter(self):
        return polygamma(1, Fraction(1, 4), self.ctx)

    def _compute_psi1_three_quarters(self):
        return polygamma(1, Fraction(3, 4), self.ctx)

    def _compute_psi2_one(self):
        return polygamma(2, Fraction(1), self.ctx)

    def _compute_psi2_half(self):
        return polygamma(2, Fraction(1, 2), self.ctx)

    def _compute_psi2_three_quarters(self):
        return polygamma(2, Fraction(3, 4), self.ctx)
