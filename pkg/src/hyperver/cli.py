"""Command-line front end.

Exit codes: 0 when every check passes, 1 when at least one fails, 2 for a
usage error or a violated precondition (unknown id, bad parameter, p not
1 mod 4, ...).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .bigfloat import EvalContext
from .errors import HyperverError
from .exact import as_rational
from .identities.registry import REGISTRY, get
from .identities.verify import ROUTES, VerificationReport, verify, verify_all, verify_jet_limit
from .jets import LaurentJet
from .padic import ModPSquare

SCHEMA_VERSION = 1

GRAMMAR = (
    "hyperver (list | constants | verify <ID> [--n INT] [--p INT] [--param k=v]... [--prec BITS] "
    "[--tol DEC] [--terms INT] [--json] [--seed INT] | suite [--profile quick|full] [--json])"
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperver", description="Verify hypergeometric identities exactly or numerically.", usage=GRAMMAR)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", help="list catalogued identities and jet-limit routes")

    p = sub.add_parser("constants", help="print the constants table")
    p.add_argument("--prec", type=int, default=192)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="verify one identity or one jet-limit route")
    p.add_argument("id")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--param", action="append", default=[], metavar="k=v")
    p.add_argument("--prec", type=int, default=192)
    p.add_argument("--tol", type=float)
    p.add_argument("--terms", type=int)
    p.add_argument("--order", type=int, default=2, help="jet truncation K for jet-limit routes")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, help="draw a random admissible tuple for identities with free parameters")
    p.add_argument("--no-timing", action="store_true")

    p = sub.add_parser("suite", help="run the quick or full profile")
    p.add_argument("--profile", choices=("quick", "full"), default="quick")
    p.add_argument("--prec", type=int, default=192)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind")
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-timing", action="store_true")
    return parser


# ---------------------------------------------------------------------------
# rendering


def render_value(x, ctx: EvalContext):
    """Text form of a report value: rationals as ``num/den``, floats as decimals at context precision."""
    if x is None:
        return None
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, ModPSquare):
        return f"{x.r} mod {x.p}^2"
    if isinstance(x, LaurentJet):
        return {str(x.val + i): render_value(c, ctx) for i, c in enumerate(x.coeffs)} | {"order": x.order}
    if isinstance(x, str):
        return x
    if isinstance(x, float):
        return repr(x)
    return ctx.nstr(ctx.mpf(x))


def render_diff(x, ctx: EvalContext):
    if x is None:
        return None
    if isinstance(x, (int, Fraction)):
        return render_value(Fraction(x), ctx)
    return ctx.mp.nstr(ctx.mpf(x), 6, min_fixed=1, max_fixed=0)


def report_dict(r: VerificationReport, ctx: EvalContext, timing: bool = True) -> dict:
    return {
        "id": r.id,
        "params": {k: (render_value(v, ctx) if not isinstance(v, str) else v) for k, v in sorted(r.params.items())},
        "kind": r.kind,
        "pass": bool(r.passed),
        "lhs": render_value(r.lhs, ctx),
        "rhs": render_value(r.rhs, ctx),
        "abs_diff": render_diff(r.abs_diff, ctx),
        "tolerance": None if r.tolerance is None else f"{r.tolerance:.0e}",
        "terms": r.terms,
        "ms": round(r.ms, 3) if timing else None,
    }


def emit_json(reports, ctx: EvalContext, seed=None, timing: bool = True) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "context": {"prec": ctx.prec, "seed": seed},
        "results": [report_dict(r, ctx, timing) for r in reports],
    }
    return json.dumps(doc, indent=2)


def _short(text, width=48):
    text = str(text)
    return text if len(text) <= width else text[: width - 3] + "..."


def report_line(r: VerificationReport, ctx: EvalContext, timing: bool = True) -> str:
    params = " ".join(f"{k}={render_value(v, ctx) if not isinstance(v, str) else v}" for k, v in sorted(r.params.items()))
    head = f"{r.id:<22} {'PASS' if r.passed else 'FAIL'}"
    if r.kind == "criterion":
        body = f"{r.lhs}/{r.rhs} checks; {r.detail['title']}"
    elif r.tolerance is None:
        verdict = "exact-equal" if r.passed else "exact-MISMATCH"
        body = f"{verdict} lhs={_short(render_value(r.lhs, ctx))} rhs={_short(render_value(r.rhs, ctx))}"
    else:
        body = (
            f"|lhs-rhs|={render_diff(r.abs_diff, ctx)} < {r.tolerance:.0e}? {bool(r.passed)} "
            f"lhs={ctx.nstr(ctx.mpf(r.lhs), 20)} terms={r.terms} via {r.strategy}"
        )
    tail = f" [{r.ms:.1f} ms]" if timing else ""
    return f"{head} {body}" + (f" ({params})" if params else "") + tail


# ---------------------------------------------------------------------------
# commands


def _parse_params(args) -> dict:
    params = {}
    for item in args.param:
        if "=" not in item:
            raise UsageError(f"--param expects k=v, got {item!r}")
        k, v = item.split("=", 1)
        try:
            params[k.strip()] = as_rational(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot read {v!r} as a rational") from exc
    if args.n is not None:
        params["n"] = args.n
    if args.p is not None:
        params["p"] = args.p
    return params


def _context(prec: int) -> EvalContext:
    if prec < 64:
        raise UsageError("--prec must be at least 64")
    return EvalContext(prec)


def cmd_list(args, out) -> int:
    for desc in REGISTRY.values():
        params = ", ".join(desc.param_names) or "-"
        out.write(f"{desc.id:<18} {desc.kind:<18} {desc.strategy:<18} params: {params:<14} {desc.summary}\n")
    for route in ROUTES:
        out.write(f"{route:<18} jet-limit route\n")
    return 0


def cmd_constants(args, out) -> int:
    ctx = _context(args.prec)
    values = ctx.constants.as_dict()
    if args.json:
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, "context": {"prec": ctx.prec},
                              "constants": {k: ctx.nstr(v) for k, v in values.items()}}, indent=2) + "\n")
    else:
        for k, v in values.items():
            out.write(f"{k:<22} {ctx.nstr(v)}\n")
    return 0


def _is_route(name: str) -> bool:
    return "->" in name or "→" in name


def cmd_verify(args, out) -> int:
    ctx = _context(args.prec)
    params = _parse_params(args)
    if _is_route(args.id):
        report = verify_jet_limit(args.id, ctx, n=params.get("n"), order=args.order, tol=args.tol, terms=args.terms)
    else:
        desc = get(args.id)
        if args.seed is not None and desc.sample is not None:
            drawn = desc.sample(random.Random(f"{args.seed}:{desc.id}"))
            params = {**{k: v for k, v in drawn.items() if v is not None}, **params}
        report = verify(desc.id, params, ctx, tol=args.tol, terms=args.terms)
    timing = not args.no_timing
    if args.json:
        out.write(emit_json([report], ctx, args.seed, timing) + "\n")
    else:
        out.write(report_line(report, ctx, timing) + "\n")
    return 0 if report.passed else 1


def cmd_suite(args, out) -> int:
    ctx = _context(args.prec)
    reports = verify_all(args.profile, ctx, kind=args.kind, seed=args.seed)
    timing = not args.no_timing
    if args.json:
        out.write(emit_json(reports, ctx, args.seed, timing) + "\n")
    else:
        for r in reports:
            out.write(report_line(r, ctx, timing) + "\n")
        n_ok = sum(r.passed for r in reports)
        out.write(f"{n_ok}/{len(reports)} passed ({args.profile} profile, P = {ctx.prec})\n")
    return 0 if all(r.passed for r in reports) else 1


COMMANDS = {"list": cmd_list, "constants": cmd_constants, "verify": cmd_verify, "suite": cmd_suite}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage: {GRAMMAR}\nerror: {exc}\n")
        return 2
    except HyperverError as exc:
        message = exc.args[0] if exc.args else ""
        err.write(f"error: {type(exc).__name__}: {message}\n")
        return 2


def main() -> None:
    sys.exit(run())
