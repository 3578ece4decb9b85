"""Infinite arctangent series with closed-form tail bounds.

Every series here declares its own certified bound on the omitted
remainder; truncation never relies on a heuristic.
"""

from __future__ import annotations

import time
from typing import Optional

from .finite_identities import check_angle
from .number_theory import chi4, fibonacci, legendre3, sgn_s
from .precision import DomainError, PrecisionContext, SeriesOutcome, resolve, sum_with_tail
from .report import IdentityReport, make_report

THETA_BETA_NOTE = "assumption: beta = 1/alpha (no product constraint is printed for this pair)"


def _combine(a: SeriesOutcome, b: SeriesOutcome):
    return a.value + b.value, a.terms_used + b.terms_used, a.tail_bound + b.tail_bound, a.converged and b.converged


# --- classical single series -------------------------------------------------


def glaisher_term(n: int, mp):
    return mp.atan(mp.mpf(2) / (2 * n + 1) ** 2)


def glaisher_telescoping_gap(n: int, ctx: Optional[PrecisionContext] = None):
    """``arctan(2/(2n+1)^2) - [arctan(1/2n) - arctan(1/(2n+2))]`` for ``n >= 1``."""
    if n < 1:
        raise DomainError("telescoping holds for n >= 1")
    mp = resolve(ctx).mp
    return glaisher_term(n, mp) - (mp.atan(mp.mpf(1) / (2 * n)) - mp.atan(mp.mpf(1) / (2 * n + 2)))


def glaisher_partial_telescoped(N: int, ctx: Optional[PrecisionContext] = None):
    """Partial sum through index ``N`` in collapsed form."""
    mp = resolve(ctx).mp
    if N == 0:
        return mp.atan(2)
    return mp.atan(2) + mp.atan(mp.mpf(1) / 2) - mp.atan(mp.mpf(1) / (2 * N + 2))


def glaisher_sum(mode: str = "telescoped", ctx: Optional[PrecisionContext] = None) -> SeriesOutcome:
    """``sum_{n>=0} arctan(2/(2n+1)^2)``; equals ``pi/2``."""
    ctx = resolve(ctx)
    mp = ctx.mp
    if mode == "telescoped":
        # the collapsed partial sum has the exact remainder arctan(1/(2N+2)) -> 0
        return SeriesOutcome(mp.atan(2) + mp.atan(mp.mpf(1) / 2), 1, mp.zero, True)
    if mode != "direct":
        raise DomainError(f"unknown mode {mode!r}")
    # convex terms: sum_{n>N} 2/(2n+1)^2 <= int_{N+1/2}^inf 2/(2t+1)^2 dt = 1/(2N+2)
    return sum_with_tail(lambda n: glaisher_term(n, mp), lambda N: mp.mpf(1) / (2 * N + 2), ctx)


def glaisher_direct_partial(N: int, ctx: Optional[PrecisionContext] = None):
    """Raw partial sum over ``n = 0..N-1``; falls short of ``pi/2`` by about ``1/(2N)``."""
    mp = resolve(ctx).mp
    return mp.fsum(glaisher_term(n, mp) for n in range(N))


def fibonacci_arctan_sum(ctx: Optional[PrecisionContext] = None) -> SeriesOutcome:
    """``sum_{n>=1} (-1)^{n+1} arctan(1/F_{2n})``; equals ``arctan((sqrt5 - 1)/2)``."""
    ctx = resolve(ctx)
    mp = ctx.mp

    def term(n):
        v = mp.atan(mp.mpf(1) / fibonacci(2 * n))
        return v if n % 2 else -v

    # alternating with decreasing terms: the remainder is below the next term <= 1/F_{2N+2}
    return sum_with_tail(term, lambda N: mp.mpf(1) / fibonacci(2 * N + 2), ctx, start=1)


def fibonacci_target(ctx: Optional[PrecisionContext] = None):
    mp = resolve(ctx).mp
    return mp.atan((mp.sqrt(5) - 1) / 2)


BRAGG_INDEX_NOTE = (
    "summation starts at n = 1; the printed lower index n = 0 adds arctan(sinh x) "
    "and overshoots the closed form by exactly that term"
)


def bragg_sum(x, ctx: Optional[PrecisionContext] = None, start: int = 1) -> SeriesOutcome:
    """``sum_{n>=1} arctan(sinh x / cosh nx)``; equals ``3pi/4 - arctan e^x``.

    ``start=0`` adds the ``arctan(sinh x)`` term of the printed form, which
    does not match the closed form.
    """
    ctx = resolve(ctx)
    mp = ctx.mp
    x = mp.mpf(x)
    if not x > 0:
        raise DomainError("x must be positive")
    sx = mp.sinh(x)
    q = mp.exp(-x)
    # sinh x / cosh nx <= 2 sinh x e^{-nx}; the factor 4 keeps a 2x margin
    return sum_with_tail(
        lambda n: mp.atan(sx / mp.cosh(n * x)),
        lambda N: 4 * sx * q ** (N + 1) / (1 - q),
        ctx,
        start=start,
    )


def bragg_report(x, ctx: Optional[PrecisionContext] = None) -> IdentityReport:
    ctx = resolve(ctx)
    mp = ctx.mp
    t0 = time.perf_counter()
    x = mp.mpf(x)
    out = bragg_sum(x, ctx)
    return make_report(
        "bragg", "Bragg sinh/cosh series", {"x": x}, out.value, bragg_target(x, ctx), ctx, t0,
        terms_used=out.terms_used, tail_bound=out.tail_bound, converged=out.converged, notes=[BRAGG_INDEX_NOTE],
    )


def bragg_target(x, ctx: Optional[PrecisionContext] = None):
    mp = resolve(ctx).mp
    return 3 * mp.pi / 4 - mp.atan(mp.exp(mp.mpf(x)))


# --- character-weighted modular pairs ----------------------------------------


def chi4_series(alpha, ctx: Optional[PrecisionContext] = None) -> SeriesOutcome:
    """``sum_{n>=1} chi4(n) arctan e^{-alpha n}``."""
    ctx = resolve(ctx)
    mp = ctx.mp
    alpha = mp.mpf(alpha)
    q = mp.exp(-alpha)

    def term(n):
        w = chi4(n)
        return w * mp.atan(q ** n) if w else mp.zero

    return sum_with_tail(term, lambda N: q ** (N + 1) / (1 - q), ctx, start=1)


def modular_chi4_pair(alpha, ctx: Optional[PrecisionContext] = None) -> IdentityReport:
    ctx = resolve(ctx)
    mp = ctx.mp
    t0 = time.perf_counter()
    alpha = mp.mpf(alpha)
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    beta = mp.pi ** 2 / (4 * alpha)
    lhs, used, tail, ok = _combine(chi4_series(alpha, ctx), chi4_series(beta, ctx))
    return make_report(
        "modular-chi4", "Jacobi imaginary transformation (chi4 pair)", {"alpha": alpha}, lhs, mp.pi / 8, ctx, t0,
        terms_used=used, tail_bound=tail, converged=ok,
    )


def cais_series(alpha, ctx: Optional[PrecisionContext] = None) -> SeriesOutcome:
    """``sum_{n>=1} (n/3) arctan(sqrt3 / (1 + 2 e^{alpha n}))``."""
    ctx = resolve(ctx)
    mp = ctx.mp
    alpha = mp.mpf(alpha)
    root3 = mp.sqrt(3)
    q = mp.exp(-alpha)

    def term(n):
        w = legendre3(n)
        return w * mp.atan(root3 / (1 + 2 * mp.exp(alpha * n))) if w else mp.zero

    # |term| <= (sqrt3/2) e^{-alpha n} < e^{-alpha n}
    return sum_with_tail(term, lambda N: q ** (N + 1) / (1 - q), ctx, start=1)


def cais_pair(alpha, ctx: Optional[PrecisionContext] = None) -> IdentityReport:
    ctx = resolve(ctx)
    mp = ctx.mp
    t0 = time.perf_counter()
    alpha = mp.mpf(alpha)
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    beta = 4 * mp.pi ** 2 / (9 * alpha)
    lhs, used, tail, ok = _combine(cais_series(alpha, ctx), cais_series(beta, ctx))
    return make_report(
        "cais", "Cais mod-3 pair", {"alpha": alpha}, lhs, mp.pi / 18, ctx, t0,
        terms_used=used, tail_bound=tail, converged=ok,
    )


def modular3_series(alpha, ctx: Optional[PrecisionContext] = None) -> SeriesOutcome:
    """``sum_{n>=0} ((n-1)/3) arctan(sqrt3 / (1 - 2 e^{alpha(2n+1)}))``."""
    ctx = resolve(ctx)
    mp = ctx.mp
    alpha = mp.mpf(alpha)
    root3 = mp.sqrt(3)
    q2 = mp.exp(-2 * alpha)

    def term(n):
        w = legendre3(n - 1)
        return w * mp.atan(root3 / (1 - 2 * mp.exp(alpha * (2 * n + 1)))) if w else mp.zero

    # sqrt3 / (2e^y - 1) <= sqrt3 e^{-y} for y > 0
    return sum_with_tail(term, lambda N: root3 * mp.exp(-alpha * (2 * N + 3)) / (1 - q2), ctx)


def modular3_pair(alpha, ctx: Optional[PrecisionContext] = None) -> IdentityReport:
    ctx = resolve(ctx)
    mp = ctx.mp
    t0 = time.perf_counter()
    alpha = mp.mpf(alpha)
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    beta = mp.pi ** 2 / (9 * alpha)
    lhs, used, tail, ok = _combine(modular3_series(alpha, ctx), modular3_series(beta, ctx))
    return make_report(
        "modular3", "Mod-3 transformation from the limiting reciprocal sum", {"alpha": alpha}, lhs,
        2 * mp.pi / 9, ctx, t0, terms_used=used, tail_bound=tail, converged=ok,
    )


# --- theta-function pair -----------------------------------------------------


def theta_term(j: int, alpha, theta, phi, mp):
    sj = sgn_s(j)
    return sj * mp.atan(mp.sin(2 * theta) / (mp.exp(2 * alpha * (mp.pi * abs(j) + phi * sj)) - mp.cos(2 * theta)))


def theta_series(alpha, theta, phi, ctx: Optional[PrecisionContext] = None) -> SeriesOutcome:
    """``sum_{j in Z} s(j) arctan(sin 2theta / (e^{2 alpha (pi|j| + phi s(j))} - cos 2theta))``.

    Truncated symmetrically at ``|j| <= J``; index ``J`` adds both ``+J`` and ``-J``.
    """
    ctx = resolve(ctx)
    mp = ctx.mp
    alpha, theta, phi = mp.mpf(alpha), mp.mpf(theta), mp.mpf(phi)

    def term(J):
        if J == 0:
            return theta_term(0, alpha, theta, phi, mp)
        return theta_term(J, alpha, theta, phi, mp) + theta_term(-J, alpha, theta, phi, mp)

    decay = mp.exp(-2 * alpha * mp.pi)

    def tail(J):
        # each omitted |j| > J contributes at most 2 / (e^y - 1), y >= 2 alpha (pi(J+1) - phi)
        lead = mp.exp(-2 * alpha * (mp.pi * (J + 1) - phi))
        return 2 * lead / ((1 - decay) * (1 - lead))

    return sum_with_tail(term, tail, ctx)


def theta_transform_pair(alpha, theta, phi, ctx: Optional[PrecisionContext] = None) -> IdentityReport:
    ctx = resolve(ctx)
    mp = ctx.mp
    t0 = time.perf_counter()
    alpha, theta, phi = mp.mpf(alpha), mp.mpf(theta), mp.mpf(phi)
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    check_angle(theta, "theta")
    check_angle(phi, "phi")
    beta = 1 / alpha
    lhs, used, tail, ok = _combine(theta_series(alpha, theta, phi, ctx), theta_series(beta, phi, theta, ctx))
    rhs = 2 / mp.pi * (mp.pi / 2 - theta) * (mp.pi / 2 - phi)
    return make_report(
        "theta-pair", "Theta-function imaginary transform", {"alpha": alpha, "theta": theta, "phi": phi},
        lhs, rhs, ctx, t0, terms_used=used, tail_bound=tail, converged=ok, notes=[THETA_BETA_NOTE],
    )


def theta_chi4_bijection_gap(J: int, ctx: Optional[PrecisionContext] = None):
    """Largest mismatch between theta-pair terms at ``theta = phi = pi/4, alpha = 1``
    and chi4 terms at ``alpha' = pi/2`` under ``j >= 0 -> 4j+1``, ``j < 0 -> 4|j|-1``."""
    mp = resolve(ctx).mp
    quarter = mp.pi / 4
    gap = mp.zero
    for j in range(-J, J + 1):
        n = 4 * j + 1 if j >= 0 else 4 * (-j) - 1
        ours = theta_term(j, mp.one, quarter, quarter, mp)
        theirs = chi4(n) * mp.atan(mp.exp(-mp.pi / 2 * n))
        gap = max(gap, abs(ours - theirs))
    return gap
