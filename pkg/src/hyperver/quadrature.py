"""Double-exponential (tanh-sinh) quadrature on a finite interval.

Nodes are generated together with their distances to both endpoints, so
integrands with ``(b - x)^(-1/2)``-type endpoint behaviour are evaluated
without cancellation near the ends.
"""

from __future__ import annotations

import math

from .bigfloat import EvalContext, elementary, pi
from .errors import NoConvergence, UnknownIdentity


def _lemma_t(x, da, db, ctx):
    mp = ctx.mp
    if da == 0:
        return mp.zero
    return 4 * x * x / mp.sin(x)


def _lemma_x(x, da, db, ctx):
    mp = ctx.mp
    if da == 0:
        return mp.zero
    root = elementary(db * (4 - db), "sqrt", ctx)  # sqrt(4 - x^2) with 2 - x = db
    angle = elementary(x / root, "atan", ctx)  # arcsin(x/2) without rounding x/2 up to 1
    return 8 * angle**2 / (x * root)


def _t_squared(x, da, db, ctx):
    return x * x


def _t_cos3t(x, da, db, ctx):
    return x * ctx.mp.cos(3 * x)


# id -> (integrand, lower, upper); bounds are callables of the context
INTEGRANDS = {
    "lemma21": (_lemma_t, lambda c: c.mp.zero, lambda c: pi(c) / 2),
    "lemma21_x": (_lemma_x, lambda c: c.mp.zero, lambda c: c.mpf(2)),
    "t_squared": (_t_squared, lambda c: c.mp.zero, lambda c: c.mpf(1)),
    "t_cos3t": (_t_cos3t, lambda c: c.mp.zero, lambda c: pi(c) / 2),
}


def _resolve(integrand, a, b, ctx):
    if isinstance(integrand, str):
        if integrand not in INTEGRANDS:
            raise UnknownIdentity(f"no integrand named {integrand!r}")
        f, lo, hi = INTEGRANDS[integrand]
        a = lo(ctx) if a is None else ctx.mpf(a)
        b = hi(ctx) if b is None else ctx.mpf(b)
        return f, a, b
    return integrand, ctx.mpf(a), ctx.mpf(b)


def quadrature_tanh_sinh(integrand, a=None, b=None, ctx: EvalContext | None = None, eps=None, max_level: int = 14):
    """Integrate ``f(x, x - a, b - x, ctx)`` over ``[a, b]``.

    ``integrand`` is a registered id (see :data:`INTEGRANDS`; then ``a`` and
    ``b`` default to its interval) or a callable with that signature.
    Levels halve the step until two successive estimates differ by less than
    ``eps``.  Returns ``(value, error, levels)``.
    """
    if ctx is None:
        ctx = EvalContext()
    if eps is None:
        eps = ctx.eps
    f, a, b = _resolve(integrand, a, b, ctx)
    mp = ctx.mp
    half = (b - a) / 2
    halfpi = pi(ctx) / 2
    # beyond t_max the weights times any integrable endpoint blow-up are negligible
    t_max = math.asinh(2 * ctx.wp * math.log(2) / math.pi) + 0.5

    def node(t):
        et = mp.exp(t)
        u = halfpi * (et - 1 / et) / 2
        e2u = mp.exp(-2 * abs(u))
        dist = half * 2 * e2u / (1 + e2u)  # distance to the nearer endpoint
        cosh_u = (mp.exp(u) + mp.exp(-u)) / 2
        w = halfpi * (et + 1 / et) / 2 / (cosh_u * cosh_u)
        if t >= 0:
            x, da, db = b - dist, 2 * half - dist, dist
        else:
            x, da, db = a + dist, dist, 2 * half - dist
        return w * f(x, da, db, ctx)

    h = mp.one
    total = node(mp.zero)
    j = 1
    while j * h <= t_max:
        total += node(j * h) + node(-j * h)
        j += 1
    est = total * h * half
    prev = None
    for level in range(1, max_level + 1):
        h = h / 2
        j = 1
        while j * h <= t_max:
            total += node(j * h) + node(-j * h)
            j += 2
        new = total * h * half
        prev, est = est, new
        err = abs(est - prev)
        if level >= 3 and err < eps:
            return est, err, level
    raise NoConvergence(f"tanh-sinh did not settle after {max_level} levels (last change {err})")
