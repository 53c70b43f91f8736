"""Both sides of every catalogued identity, written once over generic scalars.

The finite (terminating) builders only use ring operations, shifted
factorials and harmonic sums, so the same function evaluates at Fractions,
at exact jets and at float jets.  The infinite builders return the
``(term, weight)`` descriptors for the summation engine together with the
closed form of the other side.
"""

from __future__ import annotations

from fractions import Fraction

from ..bigfloat import EvalContext, digamma_of, elementary, gamma_of, hurwitz_zeta, pi, polygamma
from ..errors import ParamOutOfDomain
from ..exact import harmonic, mixed_harmonic, pochhammer
from ..jets import LaurentJet
from ..series import hyperterm, sum_infinite_direct, sum_terminating
from ..weights import K, UNIT, H, cross, named, poly, weight

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def _poch_ratio(num: list, den: list, n: int):
    out = 1
    for x in num:
        out = pochhammer(x, n) * out
    for x in den:
        out = out / pochhammer(x, n)
    return out


def _h(n: int, x):
    return harmonic(n, 1, x)


# ---------------------------------------------------------------------------
# terminating identities


def whipple_term(a, b, c, d, e, n: int):
    lhs = sum_terminating(
        hyperterm([a, 1 + a / 2, b, c, d, e, -n], [1, a / 2, 1 + a - b, 1 + a - c, 1 + a - d, 1 + a - e, 1 + a + n]),
        UNIT,
        n,
    )
    pref = _poch_ratio([1 + a, 1 + a - d - e], [1 + a - d, 1 + a - e], n)
    rhs = pref * sum_terminating(hyperterm([1 + a - b - c, d, e, -n], [1, 1 + a - b, 1 + a - c, d + e - a - n]), UNIT, n)
    return lhs, rhs


def whipple_a(a, c, d, e, n: int):
    """Derivative in ``c`` of the ``b = 1``, ``d -> d - c`` case of the 7F6 -> 4F3 transformation."""
    term = hyperterm([c, d - c, e, -n], [1 + a - c, 1 + a + c - d, 1 + a - e, 1 + a + n], start=1)
    w = weight(((a + 2 * K) / a, (H(1, c - 1), H(1, d - c - 1, -1), H(1, a - c), H(1, a + c - d, -1))))
    lhs = sum_terminating(term, w, n)

    pref = _poch_ratio([1 + a, 1 + a + c - d - e], [1 + a + c - d, 1 + a - e], n)
    inner = [d - c, e, -n], [1, a, d + e - a - c - n]
    s0 = sum_terminating(hyperterm(*inner), weight((a - c) / (a - c + K)), n)
    s1 = sum_terminating(
        hyperterm(*inner, start=1),
        weight(
            ((a - c) / (a - c + K), (H(1, d + e - a - c - n - 1), H(1, d - c - 1, -1))),
            -K / ((a - c + K) * (a - c + K)),
        ),
        n,
    )
    rhs = pref * (_h(n, a + c - d - e) - _h(n, a + c - d)) * s0 + pref * s1
    return lhs, rhs


def _whipple_cd_term(d, n: int):
    return hyperterm([HALF, d - HALF, Fraction(3, 2) - d, -n], [1, 2 - d, d, Fraction(3, 2) + n], start=1)


def _whipple_cd_inner(d, n: int, w):
    return sum_terminating(hyperterm([d - HALF, Fraction(3, 2) - d, -n], [1, HALF, HALF - n], start=1), w, n)


def whipple_c(d, n: int):
    """The ``a = c = 1/2``, ``e = 3/2 - d`` specialization divided by ``1 - d``."""
    bracket = (cross(0, 1 - d), cross(-HALF, d - Fraction(3, 2), coef=-1))
    lhs = sum_terminating(_whipple_cd_term(d, n), weight((poly(1, 4), bracket)), n)
    pref = pochhammer(Fraction(3, 2), n) * pochhammer(HALF, n) / (pochhammer(1 - d, n + 1) * pochhammer(d, n))
    s = _whipple_cd_inner(d, n, weight(1 / K))
    rhs = pref * (_h(n, -HALF) - _h(n, 1 - d) - s)
    return lhs, rhs


def whipple_d(d, n: int):
    """Derivative in ``d`` of :func:`whipple_c`."""
    a_combo = (H(1, d - Fraction(3, 2)), H(1, HALF - d, -1), H(1, 1 - d), H(1, d - 1, -1))
    b_combo = (cross(0, 1 - d), cross(-HALF, d - Fraction(3, 2), coef=-1))
    c_combo = (cross(0, 1 - d, 1, 2), cross(-HALF, d - Fraction(3, 2), 1, 2))
    w = weight((poly(1, 4), a_combo, b_combo), (poly(1, 4), c_combo))
    lhs = sum_terminating(_whipple_cd_term(d, n), w, n)

    q = pochhammer(Fraction(3, 2), n) * pochhammer(HALF, n) / ((1 - d) * pochhammer(2 - d, n) * pochhammer(d, n))
    s = _whipple_cd_inner(d, n, weight(1 / K))
    sd = _whipple_cd_inner(d, n, weight((1 / K, (H(1, d - Fraction(3, 2)), H(1, HALF - d, -1)))))
    rhs = q * (1 / (1 - d) + _h(n, 1 - d) - _h(n, d - 1)) * (_h(n, -HALF) - _h(n, 1 - d) - s) - q * (
        harmonic(n, 2, 1 - d) + sd
    )
    return lhs, rhs


def whipple_e(e, n: int):
    lhs = sum_terminating(hyperterm([e, -n], [1, e - n], start=1), weight(1 / K), n)
    rhs = _h(n, -e) - _h(n, 0)
    return lhs, rhs


def finite_thm_a(n: int):
    lhs = sum_terminating(
        hyperterm([HALF] * 3 + [-n], [1, 1, 1, Fraction(3, 2) + n], start=1),
        weight((poly(1, 4), H(3, double=True))),
        n,
    )
    s = sum_terminating(
        hyperterm([HALF, -n], [1, HALF - n], start=1),
        weight((1 / K, (H(2, coef=4, double=True), H(2, coef=-1)))),
        n,
    )
    rhs = pochhammer(Fraction(3, 2), n) * pochhammer(HALF, n) / (8 * pochhammer(Fraction(1), n) ** 2) * (
        harmonic(n, 3) - s
    )
    return lhs, rhs


def _gosper_term(a, b, c, n: int, start: int = 0):
    return hyperterm(
        [a - HALF, (2 * a + 2) / 3, 2 * b - 1, 2 * c - 1, 2 + 2 * a - 2 * b - 2 * c, a + n, -n],
        [1, (2 * a - 1) / 3, 1 + a - b, 1 + a - c, b + c - HALF, 2 * a + 2 * n, -2 * n],
        start=start,
    )


def _gosper_prefactor(a, b, c, n: int):
    return _poch_ratio(
        [a + HALF, b, c, a - b - c + Fraction(3, 2)], [HALF, 1 + a - b, 1 + a - c, b + c - HALF], n
    )


def gosper_7f6(a, b, c, n: int):
    return sum_terminating(_gosper_term(a, b, c, n), UNIT, n), _gosper_prefactor(a, b, c, n)


def gosper_b(a, b, c, n: int):
    """Derivative in ``b`` of the Gosper sum, divided by ``3/2 + a - 2b - c``."""
    combo = (
        cross(2 * b - 2, 1 + 2 * a - 2 * b - 2 * c, coef=4),
        cross(a - b, b + c - Fraction(3, 2), coef=-1),
    )
    lhs = sum_terminating(_gosper_term(a, b, c, n, start=1), weight((1, combo)), n)
    rhs = _gosper_prefactor(a, b, c, n) * (
        mixed_harmonic(n, ((b - 1, 1), (a - b - c + HALF, 1))) - mixed_harmonic(n, ((a - b, 1), (b + c - Fraction(3, 2), 1)))
    )
    return lhs, rhs


def finite_thm_b(n: int):
    lhs = sum_terminating(
        hyperterm([HALF] * 3 + [QUARTER, Fraction(3, 4) + n, -n], [1, 1, 1, 1, Fraction(3, 2) + 2 * n, -2 * n], start=1),
        weight((poly(1, 6), (H(3, coef=64, double=True), H(3, coef=-7)))),
        n,
    )
    rhs = _poch_ratio([Fraction(3, 4)] * 3 + [Fraction(5, 4)], [Fraction(1)] * 3 + [HALF], n) * (
        harmonic(n, 3) + harmonic(n, 3, -QUARTER)
    )
    return lhs, rhs


def dougall_terminating(a, b, c, n: int):
    lhs = sum_terminating(hyperterm([a, 1 + a / 2, b, c, -n], [1, a / 2, 1 + a - b, 1 + a - c, 1 + a + n]), UNIT, n)
    rhs = _poch_ratio([1 + a, 1 + a - b - c], [1 + a - b, 1 + a - c], n)
    return lhs, rhs


# ---------------------------------------------------------------------------
# infinite series: (term, weight) descriptors


def bauer_series():
    return hyperterm([HALF] * 3, [1, 1, 1], z=-1), weight(poly(1, 4))


def thm_a_series():
    return hyperterm([HALF] * 3, [1, 1, 1], z=-1, start=1), weight((poly(1, 4), H(3, double=True)))


def thm_b_series():
    return (
        hyperterm([HALF] * 3 + [QUARTER], [1] * 4, z=QUARTER, start=1),
        weight((poly(1, 6), (H(3, coef=64, double=True), H(3, coef=-7)))),
    )


def thm_c_series():
    return hyperterm([HALF] * 5, [1] * 5, z=Fraction(-1, 4)), weight((poly(1, 8, 20), H(3)), 8 / (1 + 2 * K))


def thm_d_series():
    return (
        hyperterm([HALF] * 5, [1] * 5, z=Fraction(-1, 1024)),
        weight((poly(13, 180, 820), (H(3, coef=9, double=True), H(3, coef=-1))), 125 / (1 + 2 * K)),
    )


def guillera1_series():
    # binom(2k,k)^5/(-2^12)^k = (-1/4)^k (1/2)_k^5/(1)_k^5
    return hyperterm([HALF] * 5, [1] * 5, z=Fraction(-1, 4)), weight(poly(1, 8, 20))


def guillera2_series():
    return hyperterm([HALF] * 5, [1] * 5, z=Fraction(-1, 1024)), weight(poly(13, 180, 820))


def lemma21_series():
    return hyperterm([HALF], [1], start=1), weight((1 / K, (H(2, coef=4, double=True), H(2, coef=-1))))


def chu_t9_series(a, b, c, d, e):
    lhs = hyperterm(
        [c, d, e, 1 + a - b - c, 1 + a - b - d, 1 + a - b - e],
        [1 + a - c, 1 + a - d, 1 + a - e, 1 + 2 * a - b - c - d - e, (1 + a - b, 2)],
        z=-1,
    )
    return (lhs, weight(named("alpha", a, b, c, d, e))), _well_poised_rhs(a, b, c, d, e)


def chu_t31_series(a, b, c, d, e):
    lhs = hyperterm(
        [b, c, d, e, 1 + a - b - c, 1 + a - b - d, 1 + a - b - e, 1 + a - c - d, 1 + a - c - e, 1 + a - d - e],
        [(1 + a - b, 2), (1 + a - c, 2), (1 + a - d, 2), (1 + a - e, 2), (1 + 2 * a - b - c - d - e, 2)],
        z=-1,
    )
    return (lhs, weight(named("mu", a, b, c, d, e))), _well_poised_rhs(a, b, c, d, e)


def _well_poised_rhs(a, b, c, d, e):
    return hyperterm([b, c, d, e], [1 + a - b, 1 + a - c, 1 + a - d, 1 + a - e]), weight(a + 2 * K)


def chu_t9_b_series(a, c, d, e):
    return (
        hyperterm(
            [c, d - c, e - d, 1 - c, 1 + c - d, 1 + d - e],
            [HALF, 1, 1 + a - c, 1 + a + c - d, 1 + a + d - e, 2 + a - e],
            z=Fraction(-1, 4),
        ),
        weight(named("beta", a, c, d, e)),
    )


def chu_t9_b_rhs(a, c, d, e, ctx: EvalContext):
    return _gamma_ratio([1 + a - c, 1 + a + c - d, 1 + a + d - e, 2 + a - e], [a, 1 + a - d, 1 + a + c - e, 1 + a - c + d - e], ctx)


def chu_t9_c_series(d):
    bracket = (
        cross(-HALF, d - Fraction(3, 2)),
        cross(-HALF, HALF - d),
        cross(0, 1 - d, coef=-1),
    )
    return (
        hyperterm([HALF, d - HALF, d - HALF, Fraction(3, 2) - d, Fraction(3, 2) - d], [1, 1, 1, d, 2 - d], z=Fraction(-1, 4)),
        weight(
            (Fraction(3, 2) - d + K) / (1 + 2 * K),
            ((20 * K * K + 8 * K - 4 * d * d + 8 * d - 3) / 8, bracket),
        ),
    )


def chu_t31_e_series(a, b, c, d):
    return (
        hyperterm(
            [a, b, c - b, d - c, 1 - b, 1 + b - c, 1 + c - d, 1 + a - c, 1 + a - b + c - d, 1 + a + b - d],
            [(1, 2), (1 + a - b, 2), (1 + a + b - c, 2), (1 + a + c - d, 2), (2 + a - d, 2)],
            z=-1,
        ),
        weight(named("theta", a, b, c, d)),
    )


def chu_t31_e_rhs(a, b, c, d, ctx: EvalContext):
    return _gamma_ratio([1 + a - b, 1 + a + b - c, 1 + a + c - d, 2 + a - d], [1 + a, 1 + a - c, 1 + a - b + c - d, 1 + a + b - d], ctx)


def _chu_t31_f_term(c):
    return hyperterm(
        [HALF] * 4 + [c - HALF] * 3 + [Fraction(3, 2) - c] * 3,
        [(1, 2)] * 3 + [(c, 2), (2 - c, 2)],
        z=-1,
    )


def chu_t31_f_series(c):
    """Weight ``omega + lambda [2 S_1 + S_2 - S_3]``: the form that actually holds."""
    bracket = (
        cross(-HALF, c - Fraction(3, 2), coef=2),
        cross(-HALF, HALF - c),
        cross(0, 1 - c, coef=-1, double=True),
    )
    return _chu_t31_f_term(c), weight(named("omega", c), (named("lambda", c), bracket))


def chu_t31_f_series_bracket_on_omega(c):
    """Weight ``lambda + omega [2 S_1 - S_2 - S_3]``, with the roles swapped; a negative control that misses the closed form."""
    bracket = (
        cross(-HALF, c - Fraction(3, 2), coef=2),
        cross(-HALF, HALF - c, coef=-1),
        cross(0, 1 - c, coef=-1, double=True),
    )
    return _chu_t31_f_term(c), weight(named("lambda", c), (named("omega", c), bracket))


def _gamma_ratio(num: list, den: list, ctx: EvalContext):
    out = ctx.mp.one
    for x in num:
        out = gamma_of(_positive_arg(x), ctx) * out
    for x in den:
        out = out / gamma_of(_positive_arg(x), ctx)
    return out


def _positive_arg(x):
    base = x.base_value() if isinstance(x, LaurentJet) else x
    if base <= 0:
        raise ParamOutOfDomain(f"Gamma argument {base} is not positive")
    return x


def digamma_quotient(d, ctx: EvalContext, scale=1):
    """``scale * G(d) (psi(2-d) - psi(1) + psi(d-1/2) - psi(1/2)) / (pi (d-1))`` with
    ``G(d) = Gamma(d)Gamma(2-d)/(Gamma(d-1/2)Gamma(3/2-d))``.

    For a jet ``d = 1 + eps`` the numerator vanishes at ``eps = 0``; its
    numerically negligible head is chopped before the Laurent division.
    """
    g = _gamma_ratio([d, 2 - d], [d - HALF, Fraction(3, 2) - d], ctx)
    num = digamma_of(2 - d, ctx) - digamma_of(Fraction(1), ctx) + digamma_of(d - HALF, ctx) - digamma_of(HALF, ctx)
    den = d - 1
    if isinstance(d, LaurentJet):
        num = num.chop(1, ctx.mp.ldexp(1, -ctx.prec // 2))
        den = den.map(ctx.mpf)
    return scale * g * num / (pi(ctx) * den)


# ---------------------------------------------------------------------------
# closed forms


def thm_b_closed(ctx: EvalContext):
    c = ctx.constants
    return elementary(2, "sqrt", ctx) * c.gamma_quarter**2 * (29 * c.zeta3 - c.pi**3) / (c.pi**2 * elementary(c.pi, "sqrt", ctx))


def lemma21_closed(ctx: EvalContext):
    c = ctx.constants
    return 8 * c.pi * c.catalan - 14 * c.zeta3


def zeta3_central_binomial(ctx: EvalContext):
    """``zeta(3) = 5/2 sum_{k>=1} (-1)^(k+1) / (k^3 binom(2k,k))``, an independent route to zeta(3)."""
    # 1/binom(2k,k) = (1)_k / (4^k (1/2)_k)
    term = hyperterm([1], [HALF], z=Fraction(-1, 4), start=1, prefactor=-1)
    res = sum_infinite_direct(term, weight(1 / (K * K * K)), ctx)
    return Fraction(5, 2) * res.value


POLYGAMMA_POINTS = {
    Fraction(1): lambda z3, p: -2 * z3,
    HALF: lambda z3, p: -14 * z3,
    Fraction(3, 4): lambda z3, p: 2 * p**3 - 56 * z3,
}


def polygamma_sides(x, ctx: EvalContext):
    x = Fraction(x)
    if x not in POLYGAMMA_POINTS:
        raise ParamOutOfDomain("second polygamma closed forms are catalogued at x = 1, 1/2, 3/4 only")
    lhs = polygamma(2, x, ctx)
    rhs = POLYGAMMA_POINTS[x](zeta3_central_binomial(ctx), pi(ctx))
    return lhs, rhs


def dougall_gamma_rhs(a, b, c, d, ctx: EvalContext):
    return _gamma_ratio(
        [1 + a - b, 1 + a - c, 1 + a - d, 1 + a - b - c - d], [1 + a, 1 + a - b - c, 1 + a - b - d, 1 + a - c - d], ctx
    )


def dougall_series(a, b, c, d):
    return hyperterm([a, 1 + a / 2, b, c, d], [1, a / 2, 1 + a - b, 1 + a - c, 1 + a - d]), UNIT


def hurwitz_check(ctx: EvalContext):
    """``zeta(3) + zeta(3, 3/4)``: the limit of ``H_n^(3) + H_n^(3)(-1/4)``."""
    return hurwitz_zeta(3, Fraction(1), ctx) + hurwitz_zeta(3, Fraction(3, 4), ctx)
