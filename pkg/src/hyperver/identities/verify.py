"""Verification drivers: plain, jet-limit and whole-catalogue runs."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from ..bigfloat import EvalContext, gamma, hurwitz_zeta
from ..errors import HyperverError, ParamOutOfDomain, UnknownIdentity, ValuationMismatch
from ..jets import LaurentJet, taylor_coefficient
from ..padic import ModPSquare
from ..series import sum_infinite_direct
from . import sides
from .registry import EXACT_KINDS, get


@dataclass
class VerificationReport:
    id: str
    params: dict
    kind: str
    lhs: object
    rhs: object
    abs_diff: object
    tolerance: float | None
    terms: int
    prec: int
    ms: float
    passed: bool
    strategy: str = ""
    detail: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.kind in EXACT_KINDS or self.kind == "padic"


def _abs_diff(lhs, rhs):
    if isinstance(lhs, ModPSquare):
        return 0 if lhs == rhs else (lhs - rhs).r
    if isinstance(lhs, LaurentJet) or isinstance(rhs, LaurentJet):
        return None
    return abs(lhs - rhs)


def verify(identity_id: str, params: dict | None = None, ctx: EvalContext | None = None, tol=None, terms=None, **opts):
    """Evaluate both sides of one catalogued identity and compare them.

    Exact kinds pass only on literal equality of rationals (or jets);
    numeric kinds pass when ``|lhs - rhs| < tol`` and the summation either
    reached working precision or has a tail bound below ``tol``.
    """
    desc = get(identity_id)
    bound = desc.bind(params)
    ctx = ctx or EvalContext()
    if terms is not None:
        opts["terms"] = terms
    elif desc.term_cap is not None:
        opts.setdefault("terms", desc.term_cap)
    start = time.perf_counter()
    try:
        lhs_res, rhs = desc.sides(bound, ctx, opts)
    except HyperverError:
        raise
    except ZeroDivisionError as exc:
        raise ParamOutOfDomain(f"{desc.id} at {bound}: {exc}") from exc
    ms = (time.perf_counter() - start) * 1000
    lhs = lhs_res.value
    exact = lhs_res.strategy in ("exact", "mod-p^2")
    kind = desc.kind if exact or desc.kind not in EXACT_KINDS else "infinite-numeric"
    diff = _abs_diff(lhs, rhs)
    if exact:
        tolerance = None
        passed = lhs == rhs
    else:
        tolerance = tol if tol is not None else desc.tolerance
        # a sum cut at its term cap still counts once its certified tail bound is inside the tolerance
        settled = lhs_res.converged or (lhs_res.error is not None and lhs_res.error < tolerance)
        passed = bool(settled and diff < tolerance)
    shown = {k: v for k, v in bound.items() if v is not None}
    return VerificationReport(
        desc.id, shown, kind, lhs, rhs, diff, tolerance, lhs_res.terms, ctx.prec, ms, passed,
        lhs_res.strategy, {"error_estimate": lhs_res.error, **lhs_res.extra},
    )


# ---------------------------------------------------------------------------
# jet-limit routes

ROUTES = ("WHIPPLE_C->WHIPPLE_D", "CHU_T9_C->THM_C", "CHU_T31_F->THM_D", "FINITE_THM_B->THM_B")
_ROUTE_SOURCE = {r: r.split("->")[0] for r in ROUTES}


def _normalize_route(route: str) -> str:
    key = route.upper().replace("→", "->").replace(" ", "")
    if key in _ROUTE_SOURCE:
        return key
    for r in ROUTES:
        if key == r.split("->")[0]:
            return r
    raise UnknownIdentity(f"no jet-limit route {route!r}; routes are {', '.join(ROUTES)}")


def _report(route, params, kind, lhs, rhs, diff, tol, terms, ctx, start, passed, detail):
    ms = (time.perf_counter() - start) * 1000
    return VerificationReport(route, params, kind, lhs, rhs, diff, tol, terms, ctx.prec, ms, passed, "jet-limit", detail)


def _whipple_route(ctx, n, order, start):
    d = LaurentJet.variable(Fraction(1), order)
    lc, rc = sides.whipple_c(d, n)
    ld, rd = sides.whipple_d(LaurentJet.variable(Fraction(1), order + 1), n)
    fin, _ = sides.finite_thm_a(n)
    if isinstance(rd, LaurentJet) and rd.val < 0:
        raise ValuationMismatch(f"derivative side keeps a pole of order {-rd.val} at d = 1")
    c1_l, c1_r = taylor_coefficient(lc, 1), taylor_coefficient(rc, 1)
    d0_l, d0_r = taylor_coefficient(ld, 0), taylor_coefficient(rd, 0)
    detail = {
        "c0_lhs": taylor_coefficient(lc, 0),
        "c0_rhs": taylor_coefficient(rc, 0),
        "derivative_lhs_at_1": d0_l,
        "derivative_rhs_at_1": d0_r,
        "eight_finite_thm_a": 8 * fin,
    }
    passed = (
        c1_l == c1_r
        and detail["c0_lhs"] == detail["c0_rhs"]
        and d0_l == c1_l
        and d0_r == c1_r
        and d0_l == 8 * fin
    )
    return _report(
        "WHIPPLE_C->WHIPPLE_D", {"d": "1+eps", "n": n, "K": order}, "terminating-exact-jet",
        c1_l, c1_r, abs(c1_l - c1_r), None, n, ctx, start, passed, detail,
    )


def _chu_route(route, ctx, order, tol, start, terms):
    if route == "CHU_T9_C->THM_C":
        series, scale, factor, target = sides.chu_t9_c_series, 1, -8, 64
    else:
        series, scale, factor, target = sides.chu_t31_f_series, 2, -64, 1024
    x = LaurentJet.variable(Fraction(1), order)
    lhs = sum_infinite_direct(*series(x), ctx, max_terms=terms)
    rhs = sides.digamma_quotient(x, ctx, scale)
    if rhs.val < 0:
        raise ValuationMismatch("closed form keeps a pole at the limit point while the series is finite")
    c1_l, c1_r = taylor_coefficient(lhs.value, 1), taylor_coefficient(rhs, 1)
    c0_l, c0_r = taylor_coefficient(lhs.value, 0), taylor_coefficient(rhs, 0)
    consts = ctx.constants
    closed = target * consts.zeta3 / consts.pi**2
    recovered = factor * c1_l
    diff = abs(c1_l - c1_r)
    detail = {
        "c0_lhs": c0_l,
        "c0_rhs": c0_r,
        "recovered_series_value": recovered,
        "closed_form": closed,
        "recovered_diff": abs(recovered - closed),
        "error_estimate": lhs.error,
    }
    passed = bool(lhs.converged and diff < tol and abs(c0_l - c0_r) < tol and detail["recovered_diff"] < tol)
    name = "d" if route.startswith("CHU_T9_C") else "c"
    return _report(route, {name: "1+eps", "K": order}, "infinite-numeric-jet", c1_l, c1_r, diff, tol, lhs.terms, ctx, start, passed, detail)


def _gosper_route(ctx, n, order, tol, start):
    c = LaurentJet.variable(Fraction(3, 4), order)
    lhs, rhs = sides.gosper_b(Fraction(3, 4), Fraction(3, 4), c, n)
    fl, fr = sides.finite_thm_b(n)
    c1_l, c1_r = taylor_coefficient(lhs, 1), taylor_coefficient(rhs, 1)
    # n -> infinity: (3/4)_n^3 (5/4)_n / ((1)_n^3 (1/2)_n) -> Gamma(1/2)/(Gamma(3/4)^3 Gamma(5/4)),
    # H_n^(3) + H_n^(3)(-1/4) -> zeta(3) + zeta(3, 3/4)
    q = Fraction
    limit_prefactor = gamma(q(1, 2), ctx) / (gamma(q(3, 4), ctx) ** 3 * gamma(q(5, 4), ctx))
    limit = limit_prefactor * (hurwitz_zeta(3, q(1), ctx) + hurwitz_zeta(3, q(3, 4), ctx))
    closed = sides.thm_b_closed(ctx)
    detail = {
        "finite_lhs": fl,
        "finite_rhs": fr,
        "limit_of_finite_rhs": limit,
        "closed_form": closed,
        "limit_diff": abs(limit - closed),
    }
    passed = c1_l == fl and c1_r == fr and fl == fr and detail["limit_diff"] < tol
    return _report(
        "FINITE_THM_B->THM_B", {"a": "3/4", "b": "3/4", "c": "3/4+eps", "n": n, "K": order}, "terminating-exact-jet",
        c1_l, c1_r, abs(c1_l - c1_r), tol, n, ctx, start, passed, detail,
    )


def verify_jet_limit(route: str, ctx: EvalContext | None = None, n: int | None = None, order: int = 2, tol=None, terms=None):
    """Replay a differentiate-then-take-a-limit step with jets at ``parameter = limit + eps``.

    ``order`` is the jet truncation ``K``.  ``K = 0`` carries no derivative
    information, so the call degenerates to :func:`verify` on the source
    identity at its default parameters.
    """
    route = _normalize_route(route)
    if order == 0:
        return verify(_ROUTE_SOURCE[route], {"n": n} if n is not None else None, ctx)
    if order < 2 and route != "FINITE_THM_B->THM_B":
        raise ParamOutOfDomain("this route divides by a vanishing factor and needs K >= 2")
    start = time.perf_counter()
    if route == "WHIPPLE_C->WHIPPLE_D":
        return _whipple_route(ctx or EvalContext(), 5 if n is None else n, order, start)
    if route == "FINITE_THM_B->THM_B":
        return _gosper_route(ctx or EvalContext(), 5 if n is None else n, order, 1e-30 if tol is None else tol, start)
    ctx = ctx or EvalContext(160)
    default_tol = 1e-15 if route == "CHU_T9_C->THM_C" else 1e-12
    return _chu_route(route, ctx, order, default_tol if tol is None else tol, start, terms)


def verify_all(profile: str = "quick", ctx: EvalContext | None = None, kind: str | None = None, seed: int = 0):
    """Run the quick or full profile; reports are ordered by identity id."""
    from .acceptance import full_reports, quick_reports

    if profile not in ("quick", "full"):
        raise ValueError("profile must be 'quick' or 'full'")
    ctx = ctx or EvalContext()
    reports = quick_reports(ctx, seed) if profile == "quick" else full_reports(ctx, seed)
    if kind is not None:
        reports = [r for r in reports if r.kind == kind]
    return sorted(reports, key=lambda r: r.id)
