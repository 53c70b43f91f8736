"""The catalogue: one immutable descriptor per identity."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ..bigfloat import EvalContext, pi
from ..errors import ParamOutOfDomain, UnknownIdentity
from ..exact import as_rational
from ..padic import he_congruence_check
from ..quadrature import quadrature_tanh_sinh
from ..series import (
    SummationResult,
    central_binomial_bridge,
    check_power_series_point,
    crvz_stages,
    sum_alternating_crvz,
    sum_infinite_direct,
    sum_polynomial_decay,
    sum_slow_positive_richardson,
)
from . import sides

EXACT_KINDS = ("terminating-exact", "terminating-exact-jet")
NUMERIC_KINDS = ("infinite-numeric", "infinite-numeric-jet", "integral")

RICHARDSON_LADDER = (250_000, 500_000, 1_000_000, 2_000_000)


@dataclass(frozen=True)
class IdentityDescriptor:
    """Everything needed to check one identity.

    ``sides(params, ctx, opts)`` returns ``(lhs, rhs)`` where ``lhs`` is a
    :class:`SummationResult` carrying the strategy and term count, and
    ``rhs`` is the other side (exact scalar, float or residue).
    """

    id: str
    kind: str
    rationals: tuple
    integers: tuple
    defaults: dict
    sides: Callable
    strategy: str
    anchor: str
    tolerance: float | None = None
    term_cap: int | None = None
    sample: Callable | None = None
    summary: str = ""
    extra_checks: tuple = field(default_factory=tuple)

    @property
    def param_names(self) -> tuple:
        return self.rationals + self.integers

    def bind(self, overrides: dict | None = None) -> dict:
        """Merge ``overrides`` into the defaults, parsing rationals and integers."""
        params = dict(self.defaults)
        for key, value in (overrides or {}).items():
            if key not in self.param_names:
                raise ParamOutOfDomain(f"{self.id} has no parameter {key!r} (expected one of {self.param_names})")
            params[key] = value
        for key in self.rationals:
            if params.get(key) is not None:
                params[key] = as_rational(params[key])
        for key in self.integers:
            if key in params:
                v = as_rational(params[key])
                if v.denominator != 1:
                    raise ParamOutOfDomain(f"{key} must be an integer")
                params[key] = int(v)
        if "n" in params and params["n"] < 0:
            raise ParamOutOfDomain("n must be nonnegative")
        missing = [k for k in self.param_names if k not in params]
        if missing:
            raise ParamOutOfDomain(f"{self.id} needs values for {missing}")
        return params


def random_rational(rng: random.Random, max_den: int = 40, span: int = 3) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-span * den, span * den), den)


def _sampler(names: tuple, n_max_default: int = 12):
    def sample(rng: random.Random, n_max: int = n_max_default) -> dict:
        out = {k: random_rational(rng) for k in names}
        out["n"] = rng.randint(1, n_max)
        return out

    return sample


def _exact(fn, names):
    def run(params, ctx, opts):
        lhs, rhs = fn(*(params[k] for k in names))
        n = params.get("n", 0)
        return SummationResult(lhs, 0, n + 1, "exact"), rhs

    return run


def _direct(series_fn, rhs_fn, names=()):
    def run(params, ctx, opts):
        args = [params[k] for k in names]
        term, w = series_fn(*args)
        res = sum_infinite_direct(term, w, ctx, max_terms=opts.get("terms"))
        return res, rhs_fn(ctx, *args)

    return run


def _crvz(series_fn, rhs_fn, max_stages):
    def run(params, ctx, opts):
        stages = opts.get("terms") or min(crvz_stages(ctx.prec), max_stages)
        return sum_alternating_crvz(*series_fn(), stages, ctx), rhs_fn(ctx)

    return run


def _c(ctx):
    return ctx.constants


def _thm_a_rhs(ctx):
    c = _c(ctx)
    return 15 * c.zeta3 / (4 * c.pi) - 2 * c.catalan


def _guillera(series_fn, numerator):
    def run(params, ctx, opts):
        term, w = series_fn()
        res = sum_infinite_direct(term, w, ctx, max_terms=opts.get("terms"))
        res.extra["central_binomial_bridge"] = central_binomial_bridge(200)
        if not res.extra["central_binomial_bridge"]:
            res.converged = False
            res.error = float("inf")
        return res, numerator / pi(ctx) ** 2

    return run


def _lemma_series(params, ctx, opts):
    res = sum_slow_positive_richardson(*sides.lemma21_series(), opts.get("ladder", RICHARDSON_LADDER))
    return res, sides.lemma21_closed(ctx)


def _lemma_integral(params, ctx, opts):
    value, err, levels = quadrature_tanh_sinh("lemma21", ctx=ctx)
    return SummationResult(value, err, levels, "tanh-sinh"), sides.lemma21_closed(ctx)


def _sun(params, ctx, opts):
    res = check_power_series_point(params["x2"], ctx)
    return res, res.extra["closed_form"]


def _polygamma(params, ctx, opts):
    lhs, rhs = sides.polygamma_sides(params["x"], ctx)
    return SummationResult(lhs, 0, 0, "euler-maclaurin"), rhs


def _he(params, ctx, opts):
    rep = he_congruence_check(params["p"])
    return SummationResult(rep.lhs, 0, (params["p"] - 1) // 2 + 1, "mod-p^2"), rep.rhs


def _chu_polynomial(series_fn):
    names = ("a", "b", "c", "d", "e")

    def run(params, ctx, opts):
        (lt, lw), (rt, rw) = series_fn(*(params[k] for k in names))
        lhs = sum_infinite_direct(lt, lw, ctx, max_terms=opts.get("terms"))
        rhs = sum_polynomial_decay(rt, rw, ctx, opts.get("rhs_terms", 2000))
        lhs.extra["rhs_tail_estimate"] = rhs.error
        lhs.extra["rhs_decay_exponent"] = rhs.extra["decay_exponent"]
        return lhs, rhs.value

    return run


def _chu_digamma(series_fn, scale, name):
    def run(params, ctx, opts):
        x = params[name]
        if x == 1:
            raise ParamOutOfDomain(f"{name} = 1 is the removable singularity; use the jet-limit route")
        if not Fraction(1, 2) < x < Fraction(3, 2):
            raise ParamOutOfDomain(f"{name} must lie strictly between 1/2 and 3/2")
        res = sum_infinite_direct(*series_fn(x), ctx, max_terms=opts.get("terms"))
        return res, sides.digamma_quotient(x, ctx, scale)

    return run


def _dougall(params, ctx, opts):
    a, b, c = params["a"], params["b"], params["c"]
    if params.get("d") is None:
        n = params["n"]
        lhs, rhs = sides.dougall_terminating(a, b, c, n)
        return SummationResult(lhs, 0, n + 1, "exact"), rhs
    d = params["d"]
    if 1 + a - b - c - d <= 1:
        raise ParamOutOfDomain("nonterminating Dougall sums are checked at margin 1 + a - b - c - d > 1")
    res = sum_polynomial_decay(*sides.dougall_series(a, b, c, d), ctx, opts.get("terms") or 4000)
    return res, sides.dougall_gamma_rhs(a, b, c, d, ctx)


def _dougall_sample(rng: random.Random, n_max: int = 12) -> dict:
    return {"a": random_rational(rng), "b": random_rational(rng), "c": random_rational(rng), "n": rng.randint(1, n_max), "d": None}


def _t9b_rhs(ctx, a, c, d, e):
    return sides.chu_t9_b_rhs(a, c, d, e, ctx)


def _t31e_rhs(ctx, a, b, c, d):
    return sides.chu_t31_e_rhs(a, b, c, d, ctx)


F = Fraction
CHU_POINT = {"a": F(2), "b": F(1, 3), "c": F(1, 4), "d": F(1, 5), "e": F(1, 7)}

_DESCRIPTORS = [
    IdentityDescriptor(
        "BAUER", "infinite-numeric", (), (), {}, _crvz(sides.bauer_series, lambda ctx: 2 / pi(ctx), 96), "crvz",
        r"=\frac{2}{\pi}", 1e-20, 96, summary="alternating 1/pi series with weight 4k+1",
    ),
    IdentityDescriptor(
        "GUILLERA1", "infinite-numeric", (), (), {}, _guillera(sides.guillera1_series, 8), "direct",
        r"(20k^2+8k+1)\frac{\binom{2k}{k}^5}{(-2^{12})^k}", 1e-30, 120, summary="1/pi^2 series, ratio -1/4",
    ),
    IdentityDescriptor(
        "GUILLERA2", "infinite-numeric", (), (), {}, _guillera(sides.guillera2_series, 128), "direct",
        r"\frac{\binom{2k}{k}^5}{(-2^{20})^k}=\frac{128}{\pi^2}", 1e-30, 60, summary="1/pi^2 series, ratio -1/1024",
    ),
    IdentityDescriptor(
        "HE_CONG", "padic", (), ("p",), {"p": 5}, _he, "mod-p^2",
        r"(-1)^{\frac{p+3}{4}}p\Gamma_p(\tfrac{1}{2})\Gamma_p(\tfrac{1}{4})^2", None,
        summary="truncated 1/pi-type sum against a p-adic Gamma product mod p^2",
    ),
    IdentityDescriptor(
        "THM_A", "infinite-numeric", (), (), {}, _crvz(sides.thm_a_series, _thm_a_rhs, 96), "crvz",
        r"\frac{15\zeta(3)}{4\pi}-2G", 1e-18, 96, summary="alternating series with H_2k^(3)",
    ),
    IdentityDescriptor(
        "THM_B", "infinite-numeric", (), (), {}, _direct(sides.thm_b_series, sides.thm_b_closed), "direct",
        r"64H_{2k}^{(3)}-7H_{k}^{(3)}", 1e-30, 120, summary="ratio 1/4 series with 64H_2k^(3) - 7H_k^(3)",
    ),
    IdentityDescriptor(
        "THM_C", "infinite-numeric", (), (), {},
        _direct(sides.thm_c_series, lambda ctx: 64 * _c(ctx).zeta3 / _c(ctx).pi ** 2), "direct",
        r"(20k^2+8k+1)H_{k}^{(3)}+\frac{8}{2k+1}", 1e-30, 120, summary="ratio -1/4 series equal to 64 zeta(3)/pi^2",
    ),
    IdentityDescriptor(
        "THM_D", "infinite-numeric", (), (), {},
        _direct(sides.thm_d_series, lambda ctx: 1024 * _c(ctx).zeta3 / _c(ctx).pi ** 2), "direct",
        r"820k^2+180k+13", 1e-40, 60, summary="ratio -1/1024 series equal to 1024 zeta(3)/pi^2",
    ),
    IdentityDescriptor(
        "LEMMA21_SERIES", "infinite-numeric", (), (), {}, _lemma_series, "richardson",
        r"\frac{(\frac{1}{2})_k}{k(1)_k}\Big\{4H_{2k}^{(2)}-H_{k}^{(2)}\Big\}", 1e-6,
        summary="k^(-3/2) series extrapolated in N^(-1/2)",
    ),
    IdentityDescriptor(
        "LEMMA21_INTEGRAL", "integral", (), (), {}, _lemma_integral, "tanh-sinh",
        r"=8\pi G-14\zeta(3)", 1e-30, summary="integral of 4t^2/sin t over [0, pi/2]",
    ),
    IdentityDescriptor(
        "SUN_POWER_SERIES", "infinite-numeric", ("x2",), (), {"x2": F(1)}, _sun, "direct",
        r"\frac{4(\arcsin\frac{x}{2})^2}{\sqrt{4-x^2}}", 1e-20,
        summary="arcsin^2 power series; the parameter is x^2 so that x = sqrt 2 stays exact",
    ),
    IdentityDescriptor(
        "POLYGAMMA_VALUES", "infinite-numeric", ("x",), (), {"x": F(3, 4)}, _polygamma, "euler-maclaurin",
        r"\psi_2(\tfrac{3}{4})=2\pi^3-56\zeta_3", 1e-40,
        summary="psi_2 at 1, 1/2, 3/4 against closed forms; zeta(3) from an independent series",
    ),
    IdentityDescriptor(
        "WHIPPLE_TERM", "terminating-exact", ("a", "b", "c", "d", "e"), ("n",),
        {"a": F(1, 3), "b": F(2, 5), "c": F(-1, 2), "d": F(3, 7), "e": F(5, 4), "n": 7},
        _exact(sides.whipple_term, ("a", "b", "c", "d", "e", "n")), "exact",
        r"a,1+\frac{a}{2},b,c,d,e,-n", sample=_sampler(("a", "b", "c", "d", "e")),
        summary="terminating very-well-poised 7F6 to balanced 4F3",
    ),
    IdentityDescriptor(
        "WHIPPLE_A", "terminating-exact", ("a", "c", "d", "e"), ("n",),
        {"a": F(2, 3), "c": F(1, 5), "d": F(7, 4), "e": F(-3, 8), "n": 6},
        _exact(sides.whipple_a, ("a", "c", "d", "e", "n")), "exact",
        r"H_{k}(c-1)-H_{k}(d-c-1)+H_{k}(a-c)-H_{k}(a+c-d)", sample=_sampler(("a", "c", "d", "e")),
        summary="c-derivative of the b = 1 specialization",
    ),
    IdentityDescriptor(
        "WHIPPLE_C", "terminating-exact", ("d",), ("n",), {"d": F(5, 7), "n": 6},
        _exact(sides.whipple_c, ("d", "n")), "exact",
        r"\frac{(\frac{3}{2})_n(\frac{1}{2})_n}{(1-d)_{n+1}(d)_n}", sample=_sampler(("d",)),
        summary="a = c = 1/2, e = 3/2 - d, divided by 1 - d",
    ),
    IdentityDescriptor(
        "WHIPPLE_D", "terminating-exact", ("d",), ("n",), {"d": F(5, 7), "n": 6},
        _exact(sides.whipple_d, ("d", "n")), "exact",
        r"H_{k}(d-\tfrac{3}{2})-H_{k}(\tfrac{1}{2}-d)+H_{k}(1-d)-H_{k}(d-1)", sample=_sampler(("d",)),
        summary="d-derivative of WHIPPLE_C",
    ),
    IdentityDescriptor(
        "WHIPPLE_E", "terminating-exact", ("e",), ("n",), {"e": F(1, 3), "n": 2},
        _exact(sides.whipple_e, ("e", "n")), "exact", r"H_{n}(-e)-H_{n}", sample=_sampler(("e",)),
        summary="sum (e)_k(-n)_k/(k (1)_k (e-n)_k) = H_n(-e) - H_n",
    ),
    IdentityDescriptor(
        "FINITE_THM_A", "terminating-exact", (), ("n",), {"n": 1}, _exact(sides.finite_thm_a, ("n",)), "exact",
        r"\frac{(\frac{3}{2})_n(\frac{1}{2})_n}{8(1)_{n}^2}", summary="finite form behind THM_A",
    ),
    IdentityDescriptor(
        "GOSPER_7F6", "terminating-exact", ("a", "b", "c"), ("n",),
        {"a": F(1, 3), "b": F(2, 7), "c": F(5, 4), "n": 5}, _exact(sides.gosper_7f6, ("a", "b", "c", "n")), "exact",
        r"a-\frac{1}{2},\frac{2a+2}{3},2b-1,2c-1,2+2a-2b-2c,a+n,-n", sample=_sampler(("a", "b", "c")),
        summary="Gosper's terminating 7F6 summation",
    ),
    IdentityDescriptor(
        "GOSPER_B", "terminating-exact", ("a", "b", "c"), ("n",),
        {"a": F(1, 3), "b": F(2, 7), "c": F(5, 4), "n": 5}, _exact(sides.gosper_b, ("a", "b", "c", "n")), "exact",
        r"4\sum_{i=1}^k\frac{1}{(2b-2+i)(1+2a-2b-2c+i)}", sample=_sampler(("a", "b", "c")),
        summary="b-derivative of the Gosper sum divided by 3/2 + a - 2b - c",
    ),
    IdentityDescriptor(
        "FINITE_THM_B", "terminating-exact", (), ("n",), {"n": 1}, _exact(sides.finite_thm_b, ("n",)), "exact",
        r"H_{n}^{(3)}+H_{n}^{(3)}(-\tfrac{1}{4})", summary="finite form behind THM_B",
    ),
    IdentityDescriptor(
        "DOUGALL_5F4", "terminating-exact", ("a", "b", "c", "d"), ("n",),
        {"a": F(7, 3), "b": F(1, 4), "c": F(-2, 5), "n": 4, "d": None}, _dougall, "exact",
        r"\frac{\Gamma(1+a-b)\Gamma(1+a-c)\Gamma(1+a-d)\Gamma(1+a-b-c-d)}", 1e-10, sample=_dougall_sample,
        summary="well-poised 5F4 summation; d = -n terminates, a rational d gives the numeric check",
    ),
    IdentityDescriptor(
        "CHU_T9", "infinite-numeric", ("a", "b", "c", "d", "e"), (), dict(CHU_POINT), _chu_polynomial(sides.chu_t9_series),
        "direct+partial-sum", r"\frac{(-1)^k}{(1+a-b)_{2k}}\alpha_k(a,b,c,d,e)", 1e-8,
        summary="ratio -1/4 transform of a well-poised series with polynomial decay",
    ),
    IdentityDescriptor(
        "CHU_T9_B", "infinite-numeric", ("a", "c", "d", "e"), (), {"a": F(1, 2), "c": F(1, 3), "d": F(3, 5), "e": F(7, 4)},
        _direct(sides.chu_t9_b_series, _t9b_rhs, ("a", "c", "d", "e")), "direct",
        r"\beta_k(a,c,d,e)&=(1+a-d+2k)(a+d-e+k)", 1e-30, 200, summary="b = a case evaluated by Dougall, shifted",
    ),
    IdentityDescriptor(
        "CHU_T9_C", "infinite-numeric", ("d",), (), {"d": F(3, 4)},
        _chu_digamma(sides.chu_t9_c_series, 1, "d"), "direct",
        r"\psi(2-d)-\psi(1)+\psi(d-\frac{1}{2})-\psi(\frac{1}{2})", 1e-30, 200,
        summary="c-derivative divided by d - 2c at a = c = e - 1 = 1/2",
    ),
    IdentityDescriptor(
        "CHU_T31", "infinite-numeric", ("a", "b", "c", "d", "e"), (), dict(CHU_POINT), _chu_polynomial(sides.chu_t31_series),
        "direct+partial-sum", r"\mu_k(a,b,c,d,e)", 1e-8,
        summary="ratio -1/1024 transform of a well-poised series with polynomial decay",
    ),
    IdentityDescriptor(
        "CHU_T31_E", "infinite-numeric", ("a", "b", "c", "d"), (), {"a": F(1, 2), "b": F(1, 3), "c": F(3, 5), "d": F(7, 4)},
        _direct(sides.chu_t31_e_series, _t31e_rhs, ("a", "b", "c", "d")), "direct",
        r"\theta_k(a,b,c,d)", 1e-30, 200, summary="e = a case evaluated by Dougall, shifted",
    ),
    IdentityDescriptor(
        "CHU_T31_F", "infinite-numeric", ("c",), (), {"c": F(3, 4)},
        _chu_digamma(sides.chu_t31_f_series, 2, "c"), "direct",
        r"\lambda_k(c)+\omega_k(c)", 1e-30, 200,
        summary="b-derivative divided by c - 2b at a = b = d - 1 = 1/2 (lambda carries the harmonic bracket)",
    ),
]

REGISTRY: dict = {d.id: d for d in sorted(_DESCRIPTORS, key=lambda d: d.id)}


def get(identity_id: str) -> IdentityDescriptor:
    try:
        return REGISTRY[identity_id.upper()]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {identity_id!r}; try one of {', '.join(REGISTRY)}") from None


def ids() -> list:
    return list(REGISTRY)
