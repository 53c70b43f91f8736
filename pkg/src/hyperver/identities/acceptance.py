"""The fourteen acceptance criteria as runnable checks, plus the quick and full profiles."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from ..bigfloat import EvalContext
from ..errors import (
    DivisionByZeroJet,
    NotOneModFour,
    ParamOutOfDomain,
    PoleAtIndex,
    PoleInSum,
)
from .registry import REGISTRY
from .verify import VerificationReport, verify, verify_jet_limit

_REJECT = (PoleInSum, PoleAtIndex, ParamOutOfDomain, DivisionByZeroJet)


@dataclass
class CriterionResult:
    number: int
    title: str
    reports: list
    seconds: float
    budget: float
    notes: list = field(default_factory=list)
    ok: bool = True

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds < self.budget and all(r.passed for r in self.reports)

    @property
    def worst(self) -> VerificationReport | None:
        """The numeric report with the largest ``abs_diff / tolerance`` ratio."""
        numeric = [r for r in self.reports if r.tolerance and r.abs_diff is not None]
        if not numeric:
            return None
        return max(numeric, key=lambda r: float(r.abs_diff) / r.tolerance)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        n_ok = sum(r.passed for r in self.reports)
        worst = self.worst
        margin = f", worst |diff| {float(worst.abs_diff):.2e} < {worst.tolerance:.0e} ({worst.id})" if worst else ""
        extra = f"; {'; '.join(self.notes)}" if self.notes else ""
        return (
            f"criterion {self.number:2d} {verdict}: {self.title} "
            f"[{n_ok}/{len(self.reports)} checks{margin}; {self.seconds:.2f}s of {self.budget:g}s]{extra}"
        )


def _timed(number, title, budget, body):
    start = time.perf_counter()
    reports, notes, ok = body()
    return CriterionResult(number, title, reports, time.perf_counter() - start, budget, notes, ok)


def _rng(seed: int, tag: str) -> random.Random:
    return random.Random(f"{seed}:{tag}")


def random_reports(identity_id: str, count: int, seed: int = 0, n_max: int = 12, ctx=None, max_attempts: int = 50):
    """Verify ``count`` random tuples, redrawing any tuple that lands on a pole.

    Rejection covers both a vanishing denominator Pochhammer factor and a
    harmonic offset ``x + j = 0`` inside the summation range.
    """
    desc = REGISTRY[identity_id]
    rng = _rng(seed, identity_id)
    out = []
    rejected = 0
    while len(out) < count:
        for _ in range(max_attempts):
            params = desc.sample(rng, n_max)
            try:
                out.append(verify(identity_id, params, ctx))
                break
            except _REJECT:
                rejected += 1
        else:
            raise RuntimeError(f"{identity_id}: no admissible tuple in {max_attempts} draws")
    return out, rejected


# ---------------------------------------------------------------------------
# criteria


def criterion_1(ctx=None, seed=0):
    def body():
        reps = [verify("FINITE_THM_A", {"n": n}, ctx) for n in range(1, 51)]
        return reps, [f"n=1 value {reps[0].lhs}"], reps[0].lhs == reps[0].rhs == Fraction(-9, 32)

    return _timed(1, "FINITE_THM_A exact for n = 1..50", 2, body)


def criterion_2(ctx=None, seed=0):
    def body():
        reps = [verify("FINITE_THM_B", {"n": n}, ctx) for n in range(0, 51)]
        ok = reps[0].lhs == 0 and reps[1].lhs == Fraction(455, 128)
        return reps, [f"n=0 value {reps[0].lhs}, n=1 value {reps[1].lhs}"], ok

    return _timed(2, "FINITE_THM_B exact for n = 0..50", 2, body)


def _random_block(ids, count, seed, ctx):
    reps, notes = [], []
    for i in ids:
        r, rejected = random_reports(i, count, seed, 12, ctx)
        reps += r
        notes.append(f"{i} {sum(x.passed for x in r)}/{count} ({rejected} pole draws redrawn)")
    return reps, notes


def criterion_3(ctx=None, seed=0):
    def body():
        reps, notes = _random_block(("WHIPPLE_TERM", "GOSPER_7F6", "DOUGALL_5F4", "WHIPPLE_E"), 100, seed, ctx)
        return reps, notes, True

    return _timed(3, "WHIPPLE_TERM, GOSPER_7F6, DOUGALL_5F4(d=-n), WHIPPLE_E on 100 random tuples each", 30, body)


def criterion_4(ctx=None, seed=0):
    def body():
        reps, notes = _random_block(("WHIPPLE_A", "WHIPPLE_C", "WHIPPLE_D", "GOSPER_B"), 50, seed, ctx)
        jets = [verify_jet_limit("WHIPPLE_C->WHIPPLE_D", ctx, n=n, order=2) for n in range(1, 11)]
        notes.append(f"jet limit d=1+eps {sum(j.passed for j in jets)}/10")
        return reps + jets, notes, True

    return _timed(4, "WHIPPLE_A/C/D, GOSPER_B on 50 random tuples each and the d -> 1 jet step", 60, body)


def _numeric(ids_params, ctx):
    return [verify(i, p, ctx) for i, p in ids_params]


def _capped(reps, caps):
    notes, ok = [], True
    for r in reps:
        cap = caps.get(r.id)
        if cap is not None:
            notes.append(f"{r.id} {r.terms} terms (cap {cap})")
            ok = ok and r.terms <= cap
    return notes, ok


def criterion_5(ctx=None, seed=0):
    ctx = ctx or EvalContext()

    def body():
        reps = _numeric([("THM_B", None)], ctx)
        notes, ok = _capped(reps, {"THM_B": 120})
        return reps, notes + [f"value {ctx.nstr(reps[0].rhs, 8)}"], ok

    return _timed(5, f"THM_B at P = {ctx.prec}", 5, body)


def criterion_6(ctx=None, seed=0):
    ctx = ctx or EvalContext()

    def body():
        reps = _numeric([("THM_C", None), ("THM_D", None)], ctx)
        notes, ok = _capped(reps, {"THM_C": 120, "THM_D": 60})
        return reps, notes, ok

    return _timed(6, "THM_C and THM_D", 10, body)


def criterion_7(ctx=None, seed=0):
    ctx = ctx or EvalContext()

    def body():
        reps = _numeric([("THM_A", None), ("BAUER", None)], ctx)
        notes, ok = _capped(reps, {"THM_A": 96})
        return reps, notes, ok

    return _timed(7, "THM_A and BAUER by CRVZ acceleration", 20, body)


def criterion_8(ctx=None, seed=0):
    ctx = ctx or EvalContext()

    def body():
        reps = _numeric([("GUILLERA1", None), ("GUILLERA2", None)], ctx)
        bridge = all(r.detail.get("central_binomial_bridge") for r in reps)
        return reps, [f"binom(2k,k) = 4^k (1/2)_k/(1)_k exact for k <= 200: {bridge}"], bridge

    return _timed(8, "GUILLERA1 and GUILLERA2", 5, body)


def criterion_9(ctx=None, seed=0):
    ctx = ctx or EvalContext()

    def body():
        reps = _numeric([("LEMMA21_INTEGRAL", None), ("LEMMA21_SERIES", None)], ctx)
        return reps, [], True

    return _timed(9, "LEMMA21 by tanh-sinh and by Richardson", 60, body)


def criterion_10(ctx=None, seed=0):
    ctx = ctx or EvalContext()

    def body():
        reps = _numeric([("SUN_POWER_SERIES", {"x2": 1}), ("SUN_POWER_SERIES", {"x2": 2})], ctx)
        return reps, ["x = 1 and x = sqrt 2"], True

    return _timed(10, "SUN_POWER_SERIES at x = 1 and x = sqrt 2", 5, body)


def criterion_11(ctx=None, seed=0):
    ctx = ctx or EvalContext()

    def body():
        reps = _numeric([("POLYGAMMA_VALUES", {"x": x}) for x in ("1", "1/2", "3/4")], ctx)
        return reps, [], True

    return _timed(11, "psi_2 at 1, 1/2 and 3/4", 2, body)


HE_PRIMES = (5, 13, 17, 29, 37, 41, 53)
HE_REJECTED = (7, 11)


def criterion_12(ctx=None, seed=0):
    def body():
        reps = [verify("HE_CONG", {"p": p}, ctx) for p in HE_PRIMES]
        notes, ok = [], True
        for p in HE_REJECTED:
            try:
                verify("HE_CONG", {"p": p}, ctx)
                ok = False
                notes.append(f"p={p} was not rejected")
            except NotOneModFour:
                notes.append(f"p={p} rejected")
        return reps, notes, ok

    return _timed(12, "HE_CONG mod p^2", 5, body)


def criterion_13(ctx=None, seed=0):
    def body():
        jctx = EvalContext(160)
        reps = [verify_jet_limit("CHU_T9_C->THM_C", jctx), verify_jet_limit("CHU_T31_F->THM_D", jctx)]
        notes = [f"{r.id}: recovered value off by {float(r.detail['recovered_diff']):.1e}" for r in reps]
        return reps, notes, True

    return _timed(13, "CHU_T9_C at d = 1+eps and CHU_T31_F at c = 1+eps (K=2, P=160)", 60, body)


NUMERIC_CRITERIA = (criterion_5, criterion_6, criterion_7, criterion_8, criterion_9, criterion_10, criterion_11)


def criterion_14(ctx=None, seed=0, base=None):
    """Rerun criteria 5-11 at ``P + 64``; no difference may move past its tolerance.

    ``base`` holds the criterion results at ``P`` when the caller already has them.
    """
    ctx = ctx or EvalContext()
    hi = EvalContext(ctx.prec + 64, ctx.guard)

    def body():
        lo_runs = base or [c(ctx, seed) for c in NUMERIC_CRITERIA]
        hi_runs = [c(hi, seed) for c in NUMERIC_CRITERIA]
        reps, notes, ok = [], [], True
        for lo_c, hi_c in zip(lo_runs, hi_runs):
            for lo_r, hi_r in zip(lo_c.reports, hi_c.reports):
                hi_r.detail["diff_at_base_precision"] = lo_r.abs_diff
                reps.append(hi_r)
                if lo_r.passed and not hi_r.passed:
                    ok = False
                    notes.append(f"{hi_r.id} flipped to fail at P = {hi.prec}")
        notes.append(f"{len(reps)} reruns at P = {hi.prec}")
        return reps, notes, ok

    return _timed(14, "precision monotonicity of criteria 5-11 at P + 64", 120, body)


CRITERIA = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
    criterion_8, criterion_9, criterion_10, criterion_11, criterion_12, criterion_13, criterion_14,
)


def run_acceptance(ctx=None, seed=0) -> list:
    ctx = ctx or EvalContext()
    results = [c(ctx, seed) for c in CRITERIA[:13]]
    results.append(criterion_14(ctx, seed, base=results[4:11]))
    return results


# ---------------------------------------------------------------------------
# profiles

QUICK_TOL = 1e-15
_CATALOGUE_EXTRAS = ("CHU_T9", "CHU_T9_B", "CHU_T9_C", "CHU_T31", "CHU_T31_E", "CHU_T31_F")


def quick_reports(ctx=None, seed=0) -> list:
    """Every identity at its defaults, with geometric-ratio series held to ``1e-15``.

    Terminating identities run at ``n <= 10``; HE_CONG runs at the first three admissible primes.
    """
    ctx = ctx or EvalContext()
    out = []
    for desc in REGISTRY.values():
        if desc.id == "HE_CONG":
            out += [verify("HE_CONG", {"p": p}, ctx) for p in HE_PRIMES[:3]]
            continue
        params = None
        if "n" in desc.integers:
            params = {"n": min(desc.defaults["n"], 10)}
        tol = QUICK_TOL if desc.strategy in ("direct", "crvz") else None
        out.append(verify(desc.id, params, ctx, tol=tol))
    return out


def criterion_report(res: CriterionResult, prec: int) -> VerificationReport:
    """Summary entry carrying the criterion-level checks (value pins, term caps, rejections, time budget)."""
    n_ok = sum(r.passed for r in res.reports)
    detail = {"title": res.title, "notes": list(res.notes), "budget_s": res.budget, "checks_ok": res.ok}
    return VerificationReport(
        f"CRITERION_{res.number:02d}", {}, "criterion", n_ok, len(res.reports), None, None,
        len(res.reports), prec, res.seconds * 1000, res.passed, "acceptance", detail,
    )


def full_reports(ctx=None, seed=0) -> list:
    """All reports behind the acceptance criteria, one summary per criterion, and the identities no criterion names."""
    ctx = ctx or EvalContext()
    out = []
    for res in run_acceptance(ctx, seed):
        out += res.reports
        out.append(criterion_report(res, ctx.prec))
    out += [verify(i, None, ctx) for i in _CATALOGUE_EXTRAS]
    return out
