"""Summation of weighted hypergeometric series ``sum_k w(k) t_k``.

Series are data: a :class:`TermRecurrence` fixes ``t_k`` through the ratio
``t_{k+1}/t_k`` and a :class:`~hyperver.weights.WeightSpec` fixes ``w(k)``.
The same descriptors are evaluated exactly (Fractions), over jets, over
mpmath floats, or vectorized in float64 for the slowly convergent cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bigfloat import EvalContext, arcsin, elementary
from .errors import (
    DomainError,
    LadderTooShort,
    NotAlternating,
    NotGeometric,
    PoleAtIndex,
    PoleInSum,
)
from .jets import LaurentJet
from .weights import UNIT, H, WeightSpec, weight, _scalar_mag


@dataclass(frozen=True)
class Factor:
    """Shifted factorial ``(offset)_{stride*k}`` in a term."""

    offset: object
    stride: int = 1

    def linear(self, k: int):
        """Linear factors contributed when stepping from ``k`` to ``k+1``."""
        base = self.offset + self.stride * k
        return [base + j for j in range(self.stride)]


def _factor(x) -> Factor:
    if isinstance(x, Factor):
        return x
    if isinstance(x, tuple):
        return Factor(_exact(x[0]), x[1])
    return Factor(_exact(x))


def _exact(x):
    return Fraction(x) if isinstance(x, int) else x


def _vanishes(x) -> bool:
    if isinstance(x, LaurentJet):
        return x.is_zero() or x.val > 0
    return x == 0


@dataclass(frozen=True)
class TermRecurrence:
    """``t_k = prefactor * z^k * prod (a)_{s k} / prod (b)_{s k}``, summed from ``start``."""

    upper: tuple
    lower: tuple
    z: object = Fraction(1)
    start: int = 0
    prefactor: object = Fraction(1)

    def ratio(self, k: int, laurent: bool = False):
        num = self.z
        for f in self.upper:
            for x in f.linear(k):
                num = num * x
        den = 1
        for f in self.lower:
            for x in f.linear(k):
                if _vanishes(x) and not (laurent and isinstance(x, LaurentJet) and not x.is_zero()):
                    raise PoleAtIndex(k + 1, f"lower factor ({f.offset})_{f.stride}k")
                den = x * den
        return num / den

    def terms(self, laurent: bool = False, upto: int | None = None):
        """Yield ``(k, t_k)`` for ``k = 0, 1, 2, ...`` (through ``upto`` when given)."""
        t = self.prefactor
        k = 0
        while True:
            yield k, t
            if upto is not None and k >= upto:
                return
            t = t * self.ratio(k, laurent)
            k += 1

    def map(self, fn) -> "TermRecurrence":
        return TermRecurrence(
            tuple(Factor(fn(f.offset), f.stride) for f in self.upper),
            tuple(Factor(fn(f.offset), f.stride) for f in self.lower),
            fn(self.z),
            self.start,
            fn(self.prefactor),
        )

    # -- geometric certificate -------------------------------------
    def limit_ratio(self) -> float:
        """``lim |t_{k+1}/t_k|`` (0 for super-geometric decay)."""
        du = sum(f.stride for f in self.upper)
        dl = sum(f.stride for f in self.lower)
        if du > dl:
            raise NotGeometric("term ratio grows without bound")
        lead = _scalar_mag(self.z)
        for f in self.upper:
            lead *= f.stride**f.stride
        for f in self.lower:
            lead /= f.stride**f.stride
        return lead if du == dl else 0.0

    def ratio_envelope(self, k: int) -> float:
        """Upper bound on ``|t_{j+1}/t_j|`` valid for every ``j >= k``; non-increasing in ``k``."""
        du = sum(f.stride for f in self.upper)
        dl = sum(f.stride for f in self.lower)
        val = self.limit_ratio() if du == dl else _scalar_mag(self.z) * _lead_ratio(self)
        for f in self.upper:
            a = _base_mag(f.offset)
            for j in range(f.stride):
                val *= 1 + (a + j) / (f.stride * k)
        for f in self.lower:
            b = _base_mag(f.offset)
            for j in range(f.stride):
                lo = f.stride * k + j - b
                if lo <= 0:
                    return math.inf
                val *= f.stride * k / lo if j - b < 0 else 1.0
        if dl > du:
            val *= float(k) ** (du - dl)
        return val


def _lead_ratio(term: TermRecurrence) -> float:
    lead = 1.0
    for f in term.upper:
        lead *= f.stride**f.stride
    for f in term.lower:
        lead /= f.stride**f.stride
    return lead


def _base_mag(x) -> float:
    if isinstance(x, LaurentJet):
        x = x.base_value()
    return abs(float(x))


def hyperterm(upper, lower, z=1, start: int = 0, prefactor=1) -> TermRecurrence:
    """Build a term from offsets or ``(offset, stride)`` pairs.

    Note that ``(1)_k`` is not implied: list it among ``lower`` when needed.
    """
    return TermRecurrence(
        tuple(_factor(x) for x in upper),
        tuple(_factor(x) for x in lower),
        _exact(z),
        start,
        _exact(prefactor),
    )


@dataclass
class SummationResult:
    value: object
    error: object
    terms: int
    strategy: str
    converged: bool = True
    extra: dict = field(default_factory=dict)


class _WeightEvaluator:
    """Running harmonic ladders for a weight; ``at(k)`` must be called with increasing ``k``."""

    def __init__(self, spec: WeightSpec):
        self.spec = spec
        self.parts = []
        self.state = {}
        for t in spec.terms:
            for combo in t.combos:
                for p in combo:
                    if id(p) not in self.state:
                        self.state[id(p)] = [0, p.coef * 0]
                        self.parts.append(p)

    def _ladder(self, p, m: int):
        st = self.state[id(p)]
        while st[0] < m:
            st[0] += 1
            st[1] = st[1] + p.summand(st[0])
        return st[1]

    def at(self, k: int):
        total = 0
        for t in self.spec.terms:
            v = t.factor(k)
            for combo in t.combos:
                s = 0
                for p in combo:
                    s = s + p.coef * self._ladder(p, 2 * k if p.double else k)
                v = v * s
            total = total + v
        return total


def weighted_terms(term: TermRecurrence, spec: WeightSpec = UNIT, laurent: bool = False, upto: int | None = None):
    """Yield ``(k, t_k, w(k) t_k)`` for ``k >= term.start``."""
    ev = _WeightEvaluator(spec)
    for k, t in term.terms(laurent, upto):
        if k < term.start:
            continue
        yield k, t, ev.at(k) * t


def sum_terminating(term: TermRecurrence, spec: WeightSpec = UNIT, n: int = 0, laurent: bool = False):
    """Exact ``sum_{k=start}^{n} w(k) t_k`` over whatever scalar kind the descriptors carry."""
    total = 0
    for _, _, wt in weighted_terms(term, spec, laurent, upto=n):
        total = wt + total
    if isinstance(total, int):
        return Fraction(total)
    return total


def _mag(x) -> float:
    return _scalar_mag(x)


def _certificate(term: TermRecurrence, spec: WeightSpec):
    lim = term.limit_ratio()
    if lim >= 1:
        raise NotGeometric(f"limit term ratio {lim} is not below one")
    rho_t = (lim + 1) / 2
    rho = (rho_t + 1) / 2
    bound, degree, k1 = spec.envelope()
    # smallest k where the term ratio envelope is below rho_t
    k = max(1, term.start)
    while term.ratio_envelope(k) > rho_t:
        k *= 2
        if k > 1 << 40:
            raise NotGeometric("ratio envelope never drops below the target")
    lo, hi = max(1, k // 2), k
    while lo < hi:
        mid = (lo + hi) // 2
        if term.ratio_envelope(mid) <= rho_t:
            hi = mid
        else:
            lo = mid + 1
    k_ratio = hi
    # weight envelope growth (1 + 1/k)^D <= rho / rho_t
    k_weight = 1
    if degree > 0:
        k_weight = math.ceil(1 / ((rho / rho_t) ** (1 / degree) - 1))
    return max(k_ratio, k_weight, k1, term.start), rho, bound


def sum_infinite_direct(
    term: TermRecurrence,
    spec: WeightSpec = UNIT,
    ctx: EvalContext | None = None,
    eps=None,
    max_terms: int | None = None,
) -> SummationResult:
    """Partial sum plus geometric tail bound ``|t_N| W(N) rho/(1-rho) < eps``.

    ``W`` is an explicit envelope of the weight, and ``rho`` is the certified
    term-ratio bound inflated once to absorb the weight's polynomial growth.
    """
    if ctx is not None:
        term = term.map(ctx.mpf)
        spec = spec.map(ctx.mpf)
        if eps is None:
            eps = ctx.eps
    if eps is None:
        raise ValueError("eps is required without a context")
    crossover, rho, bound = _certificate(term, spec)
    factor = rho / (1 - rho)
    total = 0
    used = 0
    err = math.inf
    is_jet = False
    for k, t, wt in weighted_terms(term, spec):
        total = wt + total
        used += 1
        is_jet = isinstance(wt, LaurentJet)
        if k >= crossover:
            if is_jet:
                # derivative coefficients pick up logarithmic growth
                err = _mag(t) * bound(k) * factor * (k + 1) ** 2
            else:
                err = _mag(t) * bound(k) * factor
            if err < float(eps):
                return SummationResult(total, err, used, "direct")
        if max_terms is not None and used >= max_terms:
            break
    return SummationResult(total, err, used, "direct", converged=False)


def crvz_stages(prec: int) -> int:
    return math.ceil(prec * math.log(2) / math.log(5.83)) + 10


def _crvz(a: list, n: int, mp):
    d = (3 + mp.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b = -mp.one
    c = -d
    s = mp.zero
    for k in range(n):
        c = b - c
        s += c * a[k]
        b = (k + n) * (k - n) * b / ((k + mp.mpf(0.5)) * (k + 1))
    return s / d


def sum_alternating_crvz(
    term: TermRecurrence, spec: WeightSpec = UNIT, n_terms: int | None = None, ctx: EvalContext | None = None
) -> SummationResult:
    """Cohen-Rodriguez Villegas-Zagier acceleration of an alternating series.

    The reported error is the change between ``n`` and ``n-1`` stages.
    """
    if ctx is None:
        ctx = EvalContext()
    if n_terms is None:
        n_terms = crvz_stages(ctx.prec)
    term = term.map(ctx.mpf)
    spec = spec.map(ctx.mpf)
    mags = []
    sign0 = None
    for i, (k, _, wt) in enumerate(weighted_terms(term, spec)):
        if i >= n_terms:
            break
        s = 1 if wt > 0 else -1 if wt < 0 else 0
        if sign0 is None:
            sign0 = s
        if s != sign0 * (-1) ** i:
            raise NotAlternating(f"sign pattern broken at k = {k}")
        mags.append(abs(wt))
    mp = ctx.mp
    full = _crvz(mags, n_terms, mp)
    prev = _crvz(mags, n_terms - 1, mp)
    return SummationResult(sign0 * full, abs(full - prev), n_terms, "crvz")


def decay_exponent(term: TermRecurrence, spec: WeightSpec = UNIT) -> float:
    """``p`` with ``|w(k) t_k| ~ C k^(-p)`` for a balanced term (``|z| = 1``, equal strides)."""
    du = sum(f.stride for f in term.upper)
    dl = sum(f.stride for f in term.lower)
    if du != dl or abs(term.limit_ratio() - 1) > 1e-12:
        raise NotGeometric("decay exponent is defined for unit-ratio terms only")
    # t_{k+1}/t_k = 1 + (sum of shifts)/k + O(1/k^2) after factoring the strides out
    shift = 0.0
    for f in term.upper:
        shift += sum((_base_value(f.offset) + j) / f.stride for j in range(f.stride))
    for f in term.lower:
        shift -= sum((_base_value(f.offset) + j) / f.stride for j in range(f.stride))
    degree = max(t.factor.degree for t in spec.terms)
    return -(shift + degree)


def _base_value(x) -> float:
    if isinstance(x, LaurentJet):
        x = x.base_value()
    return float(x)


def sum_polynomial_decay(
    term: TermRecurrence, spec: WeightSpec = UNIT, ctx: EvalContext | None = None, n_terms: int = 2000
) -> SummationResult:
    """Plain partial sum of a series whose terms fall off like ``k^(-p)``, ``p > 1``.

    The error estimate is the integral tail ``|w(N) t_N| N/(p-1)``; it is an
    asymptotic estimate, not a bound.  Meant for parameter points with a
    comfortable convergence margin.
    """
    if ctx is None:
        ctx = EvalContext()
    p = decay_exponent(term, spec)
    if p <= 1:
        raise NotGeometric(f"terms decay like k^-{p:.3g}; the series does not converge fast enough")
    term = term.map(ctx.mpf)
    spec = spec.map(ctx.mpf)
    total = 0
    last = 0
    used = 0
    for k, _, wt in weighted_terms(term, spec):
        total = wt + total
        last = wt
        used += 1
        if used >= n_terms:
            break
    err = _mag(last) * used / (p - 1)
    return SummationResult(total, err, used, "partial-sum", extra={"decay_exponent": p})


# ---------------------------------------------------------------------------
# float64 path for slowly convergent positive series


def float_weighted_terms(term: TermRecurrence, spec: WeightSpec, n: int) -> np.ndarray:
    """Vectorized ``w(k) t_k`` for ``k = 0..n`` in float64 (zero below ``start``)."""
    term = term.map(float)
    spec = spec.map(float)
    k = np.arange(n, dtype=float)
    ratio = np.full(n, term.z, dtype=float)
    for f in term.upper:
        for j in range(f.stride):
            ratio *= f.offset + f.stride * k + j
    for f in term.lower:
        for j in range(f.stride):
            den = f.offset + f.stride * k + j
            if np.any(den == 0):
                raise PoleAtIndex(int(np.argmax(den == 0)) + 1)
            ratio /= den
    t = np.empty(n + 1)
    t[0] = term.prefactor
    t[1:] = term.prefactor * np.cumprod(ratio)
    kk = np.arange(n + 1, dtype=float)
    kk[: term.start] = 1.0  # placeholder; these terms are discarded below
    w = np.zeros(n + 1)
    for wt in spec.terms:
        v = wt.factor(kk)
        for combo in wt.combos:
            s = np.zeros(n + 1)
            for p in combo:
                m = 2 * n if p.double else n
                i = np.arange(1, m + 1, dtype=float)
                summand = np.ones(m)
                for x, pw in p.offsets:
                    d = x + i
                    if np.any(d == 0):
                        raise PoleInSum("harmonic summand vanishes")
                    summand /= d**pw
                ladder = np.concatenate(([0.0], np.cumsum(summand)))
                idx = (2 if p.double else 1) * np.arange(n + 1)
                s += p.coef * ladder[idx]
            v = v * s
        w += v
    out = w * t
    out[: term.start] = 0.0
    return out


def richardson(ns, sums, exponent: float = 0.5):
    """Neville table extrapolating ``S(N)`` to ``N -> inf`` in powers of ``N^-exponent``.

    Returns the table; the last diagonal entry is the estimate.
    """
    h = [n ** (-exponent) for n in ns]
    table = [[s] for s in sums]
    for i in range(1, len(ns)):
        for j in range(1, i + 1):
            num = h[i - j] * table[i][j - 1] - h[i] * table[i - 1][j - 1]
            table[i].append(num / (h[i - j] - h[i]))
    return table


def sum_slow_positive_richardson(
    term: TermRecurrence, spec: WeightSpec = UNIT, n_ladder=(250_000, 500_000, 1_000_000, 2_000_000), ctx=None
) -> SummationResult:
    """Partial sums on a ladder of cutoffs, extrapolated in powers of ``N^-1/2``."""
    ns = sorted(int(n) for n in n_ladder)
    if len(ns) < 2:
        raise LadderTooShort("need at least two ladder points")
    vals = float_weighted_terms(term, spec, ns[-1])
    sums = [float(np.sum(vals[: n + 1])) for n in ns]
    table = richardson(ns, sums)
    est = table[-1][-1]
    err = abs(est - table[-2][-1])
    return SummationResult(est, err, ns[-1], "richardson", extra={"partial_sums": sums})


# ---------------------------------------------------------------------------
# power series for 4 arcsin(x/2)^2 / sqrt(4 - x^2)


def sun_series(x2) -> tuple[TermRecurrence, WeightSpec]:
    """Term and weight of ``sum_k (x/2)^(2k) (1/2)_k/(1)_k [4 H_2k^(2) - H_k^(2)]`` given ``x^2``."""
    term = hyperterm([Fraction(1, 2)], [1], z=_exact(x2) / 4, start=1)
    w = weight((1, (H(2, coef=4, double=True), H(2, coef=-1))), label="4H_2k^(2) - H_k^(2)")
    return term, w


def check_power_series_point(x2, ctx: EvalContext, eps=None) -> SummationResult:
    """Compare the series at ``x = sqrt(x2)`` against its closed form.

    ``x2`` is the square of the evaluation point so that rational squares
    such as 2 (``x = sqrt 2``) stay exact.  The result value is the series;
    ``extra["closed_form"]`` holds the closed form.
    """
    x2 = _exact(x2)
    if not 0 < x2 < 4:
        raise DomainError("the expansion point must satisfy 0 < x < 2")
    term, w = sun_series(x2)
    res = sum_infinite_direct(term, w, ctx, eps)
    x = elementary(ctx.mpf(x2), "sqrt", ctx)
    closed = 4 * arcsin(x / 2, ctx) ** 2 / elementary(4 - ctx.mpf(x2), "sqrt", ctx)
    res.extra["closed_form"] = closed
    res.strategy = "direct+closed-form"
    return res


def central_binomial_bridge(k_max: int = 200) -> bool:
    """Check ``binom(2k, k) = 4^k (1/2)_k/(1)_k`` exactly for ``0 <= k <= k_max``."""
    t = Fraction(1)
    for k in range(k_max + 1):
        if 4**k * t != math.comb(2 * k, k):
            return False
        t = t * Fraction(2 * k + 1, 2) / (k + 1)
    return True
