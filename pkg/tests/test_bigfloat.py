import math
import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperver.bigfloat import (
    EvalContext,
    analytic_jet,
    bernoulli,
    digamma,
    elementary,
    gamma,
    hurwitz_zeta,
    pi,
    polygamma,
)
from hyperver.errors import DomainError
from hyperver.series import hyperterm, sum_alternating_crvz


def oracle(ctx, fn, *args):
    """Evaluate an mpmath reference function at the context's working precision.

    Fraction arguments are converted inside the raised precision.
    """
    with mpmath.workprec(ctx.wp + 32):
        conv = [mpmath.mpf(a.numerator) / a.denominator if isinstance(a, F) else a for a in args]
        return ctx.mpf(fn(*conv))


def machin_pi_digits(digits: int) -> int:
    """floor(pi * 10^digits) by Machin's formula in integer arithmetic."""
    scale = 10 ** (digits + 10)

    def arctan_inv(x):
        total, term, n, sign = 0, scale // x, 1, 1
        while term:
            total += sign * (term // n)
            term //= x * x
            n += 2
            sign = -sign
        return total

    return (4 * (4 * arctan_inv(5) - arctan_inv(239))) // 10**10


def test_sqrt_two_against_integer_square_root(ctx):
    root = elementary(ctx.mpf(2), "sqrt", ctx)
    p = ctx.prec
    exact = math.isqrt(2 * 4**p)  # floor(sqrt(2) 2^p)
    assert abs(root * 2**p - exact) <= 2
    assert ctx.nstr(root, 30).startswith("1.41421356237309504880")


def test_trivial_elementary_values(ctx):
    assert elementary(ctx.mpf(1), "ln", ctx) == 0
    assert elementary(ctx.mpf(0), "sin", ctx) == 0
    assert elementary(ctx.mpf(0), "exp", ctx) == 1


def test_elementary_domain_errors(ctx):
    with pytest.raises(DomainError):
        elementary(ctx.mpf(-1), "sqrt", ctx)
    with pytest.raises(DomainError):
        elementary(ctx.mpf(0), "ln", ctx)


def test_pi_against_machin(ctx):
    digits = 55
    got = int(pi(ctx) * ctx.mpf(10) ** digits)
    assert abs(got - machin_pi_digits(digits)) <= 1


def test_sin_of_pi_is_tiny(ctx):
    assert abs(elementary(pi(ctx), "sin", ctx)) < ctx.mpf(2) ** (-ctx.prec + 8)


def test_pi_precision_monotone():
    lo, hi = pi(EvalContext(64)), pi(EvalContext(128))
    assert abs(lo - hi) < mpmath.mpf(2) ** -60


def bernoulli_by_recurrence(n):
    b = [F(1)]
    for m in range(1, n + 1):
        b.append(-sum(math.comb(m + 1, k) * b[k] for k in range(m)) / F(m + 1))
    return b[n]


@pytest.mark.parametrize("n", [0, 2, 4, 6, 10, 20, 30])
def test_bernoulli_numbers(n):
    assert bernoulli(n) == bernoulli_by_recurrence(n)


def test_bernoulli_examples():
    assert (bernoulli(0), bernoulli(2), bernoulli(4)) == (1, F(1, 6), F(-1, 30))


def test_zeta_two_is_pi_squared_over_six(ctx):
    assert abs(hurwitz_zeta(2, F(1), ctx) - pi(ctx) ** 2 / 6) < 1e-40


def test_zeta_three(ctx):
    value = hurwitz_zeta(3, F(1), ctx)
    assert ctx.nstr(value, 30).startswith("1.2020569031595942853997")
    # two precisions agree: the Euler-Maclaurin cutoff is recomputed per call
    assert abs(value - hurwitz_zeta(3, F(1), EvalContext(256))) < ctx.mpf(2) ** (-ctx.prec + 8)


def test_catalan_from_hurwitz_against_dirichlet_beta(ctx):
    g = (hurwitz_zeta(2, F(1, 4), ctx) - hurwitz_zeta(2, F(3, 4), ctx)) / 16
    # beta(2) = sum (-1)^k / (2k+1)^2, accelerated by CRVZ
    term = hyperterm([F(1, 2), F(1, 2)], [F(3, 2), F(3, 2)], z=-1)
    beta = sum_alternating_crvz(term, n_terms=90, ctx=ctx).value
    assert abs(g - beta) < 1e-45
    assert ctx.nstr(g, 30).startswith("0.91596559417721901505")


@pytest.mark.parametrize("s,a", [(2, F(1, 3)), (3, F(7, 4)), (4, F(1, 10)), (5, F(13, 2))])
def test_hurwitz_against_reference(ctx, s, a):
    assert abs(hurwitz_zeta(s, a, ctx) - oracle(ctx, mpmath.zeta, s, a)) < 1e-50


def test_hurwitz_domain(ctx):
    with pytest.raises(DomainError):
        hurwitz_zeta(2, F(0), ctx)
    with pytest.raises(DomainError):
        polygamma(2, F(-1, 2), ctx)


def test_polygamma_special_values(ctx):
    z3 = hurwitz_zeta(3, F(1), ctx)
    p = pi(ctx)
    assert abs(polygamma(2, F(1), ctx) + 2 * z3) < 1e-40
    assert abs(polygamma(2, F(1, 2), ctx) + 14 * z3) < 1e-40
    assert abs(polygamma(2, F(3, 4), ctx) - (2 * p**3 - 56 * z3)) < 1e-40


@pytest.mark.parametrize("m,x", [(1, F(1, 4)), (2, F(5, 3)), (3, F(2, 7))])
def test_polygamma_against_reference(ctx, m, x):
    ref = oracle(ctx, mpmath.psi, m, x)
    assert abs(polygamma(m, x, ctx) - ref) < 1e-45 * max(1, abs(ref))


def test_trigamma_quarter_sum(ctx):
    total = hurwitz_zeta(2, F(1, 4), ctx) + hurwitz_zeta(2, F(3, 4), ctx)
    assert abs(total - 2 * pi(ctx) ** 2) < mpmath.mpf(10) ** (-int(0.28 * ctx.prec))


def test_digamma_against_reference(ctx):
    for x in (F(1), F(1, 2), F(7, 3)):
        ref = oracle(ctx, mpmath.digamma, x)
        assert abs(digamma(x, ctx) - ref) < 1e-50


def test_gamma_examples(ctx):
    assert abs(gamma(F(5), ctx) - 24) < 1e-50
    assert abs(gamma(F(1, 2), ctx) - elementary(pi(ctx), "sqrt", ctx)) < 1e-40
    reflection = gamma(F(1, 4), ctx) * gamma(F(3, 4), ctx)
    assert abs(reflection - pi(ctx) * elementary(ctx.mpf(2), "sqrt", ctx)) < 1e-40


def test_gamma_domain(ctx):
    with pytest.raises(DomainError):
        gamma(F(-1, 2), ctx)


def test_gamma_recurrence_on_random_rationals(ctx):
    rng = random.Random(7)
    for _ in range(100):
        x = F(rng.randint(1, 999), rng.randint(1, 100))
        if not 0 < x < 10:
            continue
        g = gamma(x, ctx)
        assert abs(gamma(x + 1, ctx) - x.numerator * g / x.denominator) < 1e-45 * max(1, abs(g) * 10)


@settings(max_examples=40, deadline=None)
@given(s=st.integers(2, 6), a=st.fractions(min_value=F(1, 50), max_value=10, max_denominator=50))
def test_hurwitz_shift(s, a):
    ctx = EvalContext(128)
    diff = hurwitz_zeta(s, a, ctx) - hurwitz_zeta(s, a + 1, ctx)
    assert abs(diff - ctx.mpf(a) ** (-s)) < mpmath.mpf(2) ** -110 * max(1, abs(diff))


def test_analytic_jets(ctx):
    c = ctx.constants
    j = analytic_jet("digamma", F(1), 2, ctx)
    assert abs(j[0] + c.euler_gamma) < 1e-50
    assert abs(j[1] - pi(ctx) ** 2 / 6) < 1e-50
    assert abs(j[2] + c.zeta3) < 1e-50
    g = analytic_jet("gamma", F(1), 1, ctx)
    assert abs(g[0] - 1) < 1e-50 and abs(g[1] + c.euler_gamma) < 1e-50
    assert analytic_jet("gamma", F(1), 0, ctx).order == 0


def test_gamma_jet_against_reference_derivatives(ctx):
    x = F(3, 4)
    j = analytic_jet("gamma", x, 3, ctx)
    with mpmath.workprec(ctx.wp + 32):
        for r in range(4):
            ref = mpmath.diff(mpmath.gamma, mpmath.mpf(3) / 4, r) / math.factorial(r)
            assert abs(j[r] - ref) < 1e-40


def test_constants_two_precision_contract(ctx):
    hi = ctx.cross_check()
    lo_vals, hi_vals = ctx.constants.as_dict(), hi.constants.as_dict()
    for name, v in lo_vals.items():
        assert abs(v - hi_vals[name]) <= abs(v) * mpmath.mpf(2) ** (-ctx.prec + 8), name


def test_constants_against_reference(ctx):
    c = ctx.constants
    with mpmath.workprec(ctx.wp + 32):
        refs = {
            "pi": mpmath.pi,
            "ln2": mpmath.ln2,
            "euler_gamma": mpmath.euler,
            "zeta3": mpmath.zeta(3),
            "catalan": mpmath.catalan,
            "gamma_quarter": mpmath.gamma(mpmath.mpf(1) / 4),
            "psi1_quarter": mpmath.psi(1, mpmath.mpf(1) / 4),
        }
        refs = {k: ctx.mpf(v) for k, v in refs.items()}
    for name, ref in refs.items():
        assert abs(getattr(c, name) - ref) < 1e-55 * max(1, abs(ref)), name


def test_precision_floor():
    with pytest.raises(ValueError):
        EvalContext(32)
