import math
import random
from fractions import Fraction as F

import mpmath
import numpy as np
import pytest

from hyperver.bigfloat import EvalContext, elementary, hurwitz_zeta, pi
from hyperver.errors import DomainError, LadderTooShort, NoConvergence, NotAlternating, NotGeometric, PoleAtIndex
from hyperver.exact import harmonic, pochhammer
from hyperver.identities import sides
from hyperver.quadrature import quadrature_tanh_sinh
from hyperver.series import (
    UNIT,
    central_binomial_bridge,
    check_power_series_point,
    crvz_stages,
    decay_exponent,
    hyperterm,
    richardson,
    sum_alternating_crvz,
    sum_infinite_direct,
    sum_polynomial_decay,
    sum_slow_positive_richardson,
    sum_terminating,
)
from hyperver.weights import H, K, named, poly, weight


def test_whipple_e_left_side_by_engine():
    # sum_k (e)_k (-n)_k / (k (1)_k (e-n)_k), k >= 1
    e, n = F(1, 3), 2
    term = hyperterm([e, -n], [1, e - n], start=1)
    value = sum_terminating(term, weight((1 / K,)), n)
    assert value == F(3, 5) == harmonic(n, 1, -e) - harmonic(n, 1)


def test_finite_identities_at_small_n():
    assert sides.finite_thm_a(1) == (F(-9, 32), F(-9, 32))
    assert sides.finite_thm_b(1) == (F(455, 128), F(455, 128))
    assert sides.finite_thm_b(0) == (0, 0)


def test_terminating_sum_pole_reports_index():
    term = hyperterm([F(1, 2), -5], [-2])
    with pytest.raises(PoleAtIndex) as info:
        sum_terminating(term, UNIT, 5)
    # (-2)_k first vanishes at k = 3
    assert info.value.k == 3


def test_terminating_sum_brute_force():
    a, b, z, n = F(2, 3), F(-1, 5), F(3, 7), 9
    term = hyperterm([a, -n], [b, 1], z=z)
    brute = sum(pochhammer(a, k) * pochhammer(-n, k) / (pochhammer(b, k) * math.factorial(k)) * z**k for k in range(n + 1))
    assert sum_terminating(term, UNIT, n) == brute


def test_exact_and_float_terminating_sums_agree(ctx128):
    for fn, args in [(sides.whipple_term, (F(1, 3), F(2, 5), F(-1, 2), F(3, 7), F(5, 4), 7)), (sides.gosper_7f6, (F(1, 3), F(2, 7), F(5, 4), 5))]:
        exact_lhs, _ = fn(*args)
        float_args = [ctx128.mpf(x) if isinstance(x, F) else x for x in args]
        float_lhs, _ = fn(*float_args)
        assert abs(float_lhs - ctx128.mpf(exact_lhs)) < mpmath.mpf(2) ** -100 * max(1, abs(float_lhs))


def test_geometric_series(ctx):
    res = sum_infinite_direct(hyperterm([1], [1], z=F(1, 2)), UNIT, ctx)
    assert abs(res.value - 2) < 1e-50
    assert res.strategy == "direct"


def test_not_geometric(ctx):
    with pytest.raises(NotGeometric):
        sum_infinite_direct(hyperterm([1], [1], z=2), UNIT, ctx)
    with pytest.raises(NotGeometric):
        sum_infinite_direct(hyperterm([1, 1], [2], z=1), UNIT, ctx)


def test_thm_c_and_d_by_direct_summation(ctx):
    c = ctx.constants
    res = sum_infinite_direct(*sides.thm_c_series(), ctx)
    assert abs(res.value - 64 * c.zeta3 / c.pi**2) < 1e-30
    assert ctx.nstr(res.value, 5) == "7.7948"
    res = sum_infinite_direct(*sides.thm_d_series(), ctx)
    assert abs(res.value - 1024 * c.zeta3 / c.pi**2) < 1e-40


def test_thm_c_by_two_strategies(ctx):
    term, w = sides.thm_c_series()
    direct = sum_infinite_direct(term, w, ctx)
    crvz = sum_alternating_crvz(term, w, crvz_stages(ctx.prec), ctx)
    assert abs(direct.value - crvz.value) < max(direct.error, crvz.error, ctx.eps) * 10


def test_tail_bound_is_sound():
    """|true - partial| never exceeds the reported bound on series with known sums."""
    rng = random.Random(3)
    ctx = EvalContext(128)
    checked = 0
    while checked < 20:
        a = F(rng.randint(1, 30), rng.randint(1, 10))
        z = F(rng.choice([-1, 1]) * rng.randint(1, 9), 10)
        # sum (a)_k z^k / k! = (1 - z)^(-a)
        true = ctx.mp.power(1 - ctx.mpf(z), -ctx.mpf(a))
        eps = ctx.mpf(10) ** -rng.randint(5, 30)
        res = sum_infinite_direct(hyperterm([a], [1], z=z), UNIT, ctx, eps=eps)
        assert abs(true - res.value) <= res.error + ctx.mpf(2) ** -120
        assert res.error < eps
        checked += 1


def test_crvz_leibniz_series(ctx):
    res = sum_alternating_crvz(hyperterm([F(1, 2)], [F(3, 2)], z=-1), UNIT, 48, ctx)
    assert abs(res.value - pi(ctx) / 4) < 1e-20


def test_crvz_bauer_and_thm_a(ctx):
    c = ctx.constants
    res = sum_alternating_crvz(*sides.bauer_series(), crvz_stages(ctx.prec), ctx)
    assert abs(res.value - 2 / c.pi) < 1e-20
    assert ctx.nstr(res.value, 5) == "0.63662"
    res = sum_alternating_crvz(*sides.thm_a_series(), 96, ctx)
    assert abs(res.value - (15 * c.zeta3 / (4 * c.pi) - 2 * c.catalan)) < 1e-18
    assert ctx.nstr(res.value, 5) == "-0.39708"


def test_crvz_rejects_positive_series(ctx):
    with pytest.raises(NotAlternating):
        sum_alternating_crvz(hyperterm([1], [1], z=F(1, 2)), UNIT, 20, ctx)


def test_richardson_core_recovers_zeta_three_halves():
    # partial sums of k^(-3/2): S_N = zeta(3/2) - 2 N^(-1/2) + N^(-3/2)/2 + ...
    ns = [250_000, 500_000, 1_000_000, 2_000_000]
    k = np.arange(1, ns[-1] + 1, dtype=np.float64)
    cums = np.cumsum(k**-1.5)
    table = richardson(ns, [float(cums[n - 1]) for n in ns])
    assert abs(table[-1][-1] - float(mpmath.zeta(1.5))) < 1e-6


def test_richardson_on_inverse_squares():
    # sum_{k>=0} 1/(k+1)^2: hyperterm (1)_k^2/(2)_k^2
    res = sum_slow_positive_richardson(hyperterm([1, 1], [2, 2]), UNIT, (1000, 2000, 4000, 8000, 16000))
    assert abs(res.value - math.pi**2 / 6) < 1e-8


def test_lemma_series_by_richardson(ctx):
    res = sum_slow_positive_richardson(*sides.lemma21_series())
    assert abs(res.value - float(sides.lemma21_closed(ctx))) < 1e-6
    assert ctx.nstr(sides.lemma21_closed(ctx), 5) == "6.1919"


def test_ladder_too_short():
    with pytest.raises(LadderTooShort):
        sum_slow_positive_richardson(hyperterm([1, 1], [2, 2]), UNIT, (1000,))


def test_quadrature_examples(ctx):
    c = ctx.constants
    v, err, _ = quadrature_tanh_sinh("lemma21", ctx=ctx)
    assert abs(v - (8 * c.pi * c.catalan - 14 * c.zeta3)) < 1e-30
    v, _, _ = quadrature_tanh_sinh("t_squared", ctx=ctx)
    assert abs(v - ctx.mpf(1) / 3) < 1e-50
    v, _, _ = quadrature_tanh_sinh("t_cos3t", ctx=ctx)
    assert abs(v - (-c.pi / 6 - ctx.mpf(1) / 9)) < 1e-50


def test_quadrature_of_substituted_integral(ctx):
    # x = 2 sin(t/2) turns the lemma integral into one with a (2-x)^(-1/2) endpoint
    c = ctx.constants
    v, _, _ = quadrature_tanh_sinh("lemma21_x", ctx=ctx)
    assert abs(v - (8 * c.pi * c.catalan - 14 * c.zeta3)) < 1e-30


def test_quadrature_no_convergence(ctx):
    with pytest.raises(NoConvergence):
        quadrature_tanh_sinh(lambda x, da, db, ctx: 1 / da, 0, 1, ctx=ctx, max_level=4)


def test_power_series_points(ctx):
    p = pi(ctx)
    res = check_power_series_point(1, ctx)
    assert abs(res.value - res.extra["closed_form"]) < 1e-25
    assert abs(res.value - p**2 / (9 * elementary(ctx.mpf(3), "sqrt", ctx))) < 1e-25
    res = check_power_series_point(2, ctx)
    assert abs(res.value - res.extra["closed_form"]) < 1e-20
    assert abs(res.value - p**2 / (4 * elementary(ctx.mpf(2), "sqrt", ctx))) < 1e-20


def test_power_series_small_x(ctx):
    res = check_power_series_point(F(1, 10**6), ctx)
    assert abs(res.value) < 1e-5
    assert abs(res.value - res.extra["closed_form"]) < 1e-40


def test_power_series_domain(ctx):
    for x2 in (0, 4, 5):
        with pytest.raises(DomainError):
            check_power_series_point(x2, ctx)


def test_central_binomial_bridge():
    assert central_binomial_bridge(200)


def test_decay_exponent_and_partial_sum(ctx):
    # sum_{k>=0} 1/((k+1)(k+2)) = 1 with decay k^-2
    term = hyperterm([1, 1], [3, 1])  # (1)_k / (3)_k = 2/((k+1)(k+2))
    assert decay_exponent(term) == pytest.approx(2)
    res = sum_polynomial_decay(term, UNIT, ctx, 4000)
    assert abs(res.value - 2) < 2 * res.error


def test_named_weights_match_direct_evaluation():
    a, b, c, d, e = F(2), F(1, 3), F(1, 4), F(1, 5), F(1, 7)
    for name, params in [("alpha", (a, b, c, d, e)), ("mu", (a, b, c, d, e)), ("beta", (a, c, d, e)), ("nu", (F(1, 2), b, c, d)), ("theta", (F(1, 2), b, c, d)), ("lambda", (F(3, 4),)), ("omega", (F(3, 4),))]:
        r = named(name, *params)
        from hyperver.weights import NAMED_WEIGHTS

        for k in range(6):
            assert r(k) == NAMED_WEIGHTS[name](*params, F(k))


def test_weight_envelope_bounds_values():
    r = named("mu", F(2), F(1, 3), F(1, 4), F(1, 5), F(1, 7))
    c, deg, k1 = r.envelope()
    for k in list(range(k1, k1 + 50)) + [10**4, 10**6]:
        assert abs(float(r(k))) <= c * k**deg


def test_harmonic_weight_with_double_index():
    # 4 H_2k^(2) - H_k^(2) at k = 3 evaluated through the engine
    term = hyperterm([], [], start=3)
    w = weight((1, (H(2, coef=4, double=True), H(2, coef=-1))))
    got = sum_terminating(term, w, 3)
    assert got == 4 * harmonic(6, 2) - harmonic(3, 2)
    assert poly(1, 2)(3) == 7
