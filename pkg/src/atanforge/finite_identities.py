"""Reciprocal finite arctangent sums, their corollaries and the complex extension.

Each ``*_half_sum`` evaluates one of the two sums in a reciprocal identity
``S(n, m, alpha) + S(m, n, 1/alpha) = const``; the ``*_residual`` functions
assemble both halves into an :class:`IdentityReport`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .number_theory import chi4, half_range, legendre3, sgn_s
from .precision import (
    DomainError,
    PrecisionContext,
    SingularTermError,
    complex_atan,
    int_power,
    resolve,
)
from .report import IdentityReport, make_report

# Theorem 2/3 residuals are compared at a looser tier (near-pole r^m amplification).
POLE_RELAX = 10

UNPROVED_NOTE = "unproved claim: stated without proof; outcome recorded, not asserted"


@dataclass(frozen=True)
class ReciprocalParams:
    """Orders ``n, m`` and the reciprocal pair ``alpha * beta = 1``.

    ``beta`` defaults to ``1/alpha`` evaluated at the working precision of
    whichever context consumes the parameters.
    """

    n: int
    m: int
    alpha: object
    beta: object = None
    odd: bool = False

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError("alpha must be positive")
        if self.beta is not None and not self.beta > 0:
            raise DomainError("beta must be positive")
        if self.odd:
            _check_odd("n", self.n)
            _check_odd("m", self.m)
        elif self.n < 0 or self.m < 0:
            raise DomainError("n and m must be non-negative")

    def scales(self, mp):
        a = mp.mpf(self.alpha)
        b = mp.mpf(self.beta) if self.beta is not None else 1 / a
        return a, b

    def swapped(self, ctx: Optional[PrecisionContext] = None) -> "ReciprocalParams":
        a, b = self.scales(resolve(ctx).mp)
        return ReciprocalParams(self.m, self.n, b, a, self.odd)

    def as_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "alpha": self.alpha}


@dataclass(frozen=True)
class AngleParams:
    theta: object
    phi: object

    def __post_init__(self):
        check_angle(self.theta, "theta")
        check_angle(self.phi, "phi")


def check_angle(value, name: str):
    # pi/2 at double precision is enough to decide membership of (0, pi/2)
    if not 0 < value < 1.5707963267948966:
        raise DomainError(f"{name} must lie strictly inside (0, pi/2)")


def _check_odd(name: str, v: int):
    if v < 1 or v % 2 == 0:
        raise DomainError(f"{name} must be a positive odd integer, got {v}")


def _root_gap(x, mp):
    """``sqrt(1 + x^2) - x`` without cancellation for large positive x."""
    if x > 0:
        return 1 / (mp.sqrt(1 + x * x) + x)
    return mp.sqrt(1 + x * x) - x


# --- reciprocal sum over cosines -------------------------------------------


def th1_terms(n: int, m: int, alpha, ctx: Optional[PrecisionContext] = None) -> list:
    ctx = resolve(ctx)
    mp = ctx.mp
    alpha = mp.mpf(alpha)
    out = []
    for j in range(-n, n + 1):
        c = mp.cos(mp.pi * j / (2 * n + 1))
        v = mp.atan(_root_gap(alpha * c, mp) ** (2 * m + 1))
        out.append(v if (n + j) % 2 == 0 else -v)
    return out


def th1_half_sum(n: int, m: int, alpha, ctx: Optional[PrecisionContext] = None):
    if n < 0 or m < 0:
        raise DomainError("n and m must be non-negative")
    mp = resolve(ctx).mp
    return mp.fsum(th1_terms(n, m, alpha, ctx))


def th1_residual(p: ReciprocalParams, ctx: Optional[PrecisionContext] = None) -> IdentityReport:
    ctx = resolve(ctx)
    mp = ctx.mp
    t0 = time.perf_counter()
    a, b = p.scales(mp)
    lhs = th1_half_sum(p.n, p.m, a, ctx) + th1_half_sum(p.m, p.n, b, ctx)
    return make_report("th1", "Theorem 1", p.as_dict(), lhs, mp.pi / 4, ctx, t0)


def cor1_report(n: int, ctx: Optional[PrecisionContext] = None) -> IdentityReport:
    ctx = resolve(ctx)
    t0 = time.perf_counter()
    lhs = th1_half_sum(n, n, 1, ctx)
    return make_report("cor1", "Corollary 1", {"n": n}, lhs, ctx.mp.pi / 8, ctx, t0)


def _chi4_half(n: int, m: int, alpha, mp):
    total = mp.zero
    for j in range(1, 2 * n + 1):
        w = chi4(j)
        if w:
            s = mp.sin(mp.pi * j / (4 * n + 2))
            total += w * mp.atan(_root_gap(alpha * s, mp) ** (2 * m + 1))
    return total


def th1_chi4_form_residual(p: ReciprocalParams, ctx: Optional[PrecisionContext] = None) -> IdentityReport:
    """Rearranged reciprocal sum weighted by ``chi4`` with sine arguments."""
    ctx = resolve(ctx)
    mp = ctx.mp
    t0 = time.perf_counter()
    a, b = p.scales(mp)
    n, m = p.n, p.m
    lhs = _chi4_half(n, m, a, mp) + _chi4_half(m, n, b, mp)
    sn = -1 if n % 2 else 1
    sm = -1 if m % 2 else 1
    rhs = (
        mp.pi / 8
        - sn * mp.atan(_root_gap(a, mp) ** (2 * m + 1)) / 2
        - sm * mp.atan(_root_gap(b, mp) ** (2 * n + 1)) / 2
    )
    return make_report("th1-chi4", "Theorem 1 (chi4 form)", p.as_dict(), lhs, rhs, ctx, t0)


# --- reciprocal sum over the mod-3 character --------------------------------


def th2_terms(n: int, m: int, alpha, ctx: Optional[PrecisionContext] = None) -> list:
    """Signed summands ``(j/3) arctan(sqrt3 / (1 + 2 r_j^m))`` for ``j = 1..floor(3n/2)``."""
    _check_odd("n", n)
    _check_odd("m", m)
    ctx = resolve(ctx)
    mp = ctx.mp
    alpha = mp.mpf(alpha)
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    root3 = mp.sqrt(3)
    out = []
    for j in range(1, half_range(n) + 1):
        w = legendre3(j)
        if w == 0:
            out.append(mp.zero)
            continue
        t = mp.tan(mp.pi * j / (3 * n))
        den = alpha - t
        if den == 0:
            # r_j^m -> +-inf from both sides; the arctan goes to 0
            out.append(mp.zero)
            continue
        rm = int_power((alpha + t) / den, m, mp)
        denom = 1 + 2 * rm
        if denom == 0:
            raise SingularTermError(f"1 + 2 r_j^m vanishes at j={j}", index=j)
        out.append(w * mp.atan(root3 / denom))
    return out


def th2_half_sum(n: int, m: int, alpha, ctx: Optional[PrecisionContext] = None):
    mp = resolve(ctx).mp
    return mp.fsum(th2_terms(n, m, alpha, ctx))


def th2_residual(p: ReciprocalParams, ctx: Optional[PrecisionContext] = None) -> IdentityReport:
    ctx = resolve(ctx)
    mp = ctx.mp
    t0 = time.perf_counter()
    a, b = p.scales(mp)
    lhs = th2_half_sum(p.n, p.m, a, ctx) + th2_half_sum(p.m, p.n, b, ctx)
    return make_report("th2", "Theorem 2", p.as_dict(), lhs, -mp.pi / 6, ctx, t0, relax=POLE_RELAX)


def cor2_report(n: int, ctx: Optional[PrecisionContext] = None) -> IdentityReport:
    ctx = resolve(ctx)
    t0 = time.perf_counter()
    lhs = th2_half_sum(n, n, 1, ctx)
    return make_report("cor2", "Corollary 2", {"n": n}, lhs, -ctx.mp.pi / 12, ctx, t0, relax=POLE_RELAX)


def cor2_display_terms(ctx: Optional[PrecisionContext] = None) -> list:
    """The three n = 3 display terms: angles pi/36, 5pi/36, 29pi/36 with signs +, -, -.

    Their sum is ``pi/12``; each is the negative of a nonzero Corollary-2 summand.
    """
    mp = resolve(ctx).mp
    root3 = mp.sqrt(3)

    def t(num):
        return mp.atan(root3 / (1 + 2 * mp.cot(num * mp.pi / 36) ** 3))

    return [t(1), -t(5), -t(29)]


# --- two-parameter generalisation -------------------------------------------


def th3_terms(n: int, m: int, alpha, theta, phi, ctx: Optional[PrecisionContext] = None) -> list:
    _check_odd("n", n)
    _check_odd("m", m)
    check_angle(theta, "theta")
    check_angle(phi, "phi")
    ctx = resolve(ctx)
    mp = ctx.mp
    alpha, theta, phi = mp.mpf(alpha), mp.mpf(theta), mp.mpf(phi)
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    s2, c2 = mp.sin(2 * theta), mp.cos(2 * theta)
    half = (n - 1) // 2
    out = []
    for j in range(-half, half + 1):
        sj = sgn_s(j)
        t = mp.tan((phi + mp.pi * j) / n)
        num, den = (alpha + t, alpha - t) if sj > 0 else (alpha - t, alpha + t)
        if den == 0:
            # R^{m s(j)} -> infinity, the summand tends to 0
            out.append(mp.zero)
            continue
        power = int_power(num / den, m, mp)
        denom = power - c2
        if denom == 0:
            raise SingularTermError(f"R_j^(m s(j)) - cos(2 theta) vanishes at j={j}", index=j)
        out.append(sj * mp.atan(s2 / denom))
    return out


def th3_half_sum(n: int, m: int, alpha, theta, phi, ctx: Optional[PrecisionContext] = None):
    mp = resolve(ctx).mp
    return mp.fsum(th3_terms(n, m, alpha, theta, phi, ctx))


def th3_residual(p: ReciprocalParams, angles: AngleParams, ctx: Optional[PrecisionContext] = None) -> IdentityReport:
    ctx = resolve(ctx)
    mp = ctx.mp
    t0 = time.perf_counter()
    theta, phi = mp.mpf(angles.theta), mp.mpf(angles.phi)
    a, b = p.scales(mp)
    lhs = th3_half_sum(p.n, p.m, a, theta, phi, ctx) + th3_half_sum(p.m, p.n, b, phi, theta, ctx)
    params = {**p.as_dict(), "theta": theta, "phi": phi}
    return make_report("th3", "Theorem 3", params, lhs, mp.pi / 2 - theta - phi, ctx, t0, relax=POLE_RELAX)


def cor3_terms(n: int, theta, ctx: Optional[PrecisionContext] = None) -> list:
    _check_odd("n", n)
    check_angle(theta, "theta")
    ctx = resolve(ctx)
    mp = ctx.mp
    theta = mp.mpf(theta)
    s2, c2 = mp.sin(2 * theta), mp.cos(2 * theta)
    half = (n - 1) // 2
    out = []
    for j in range(-half, half + 1):
        sj = sgn_s(j)
        arg = mp.pi / 4 + (theta + mp.pi * j) / n
        sin_a, cos_a = mp.sin(arg), mp.cos(arg)
        num, den = (sin_a, cos_a) if sj > 0 else (cos_a, sin_a)
        if den == 0:
            out.append(mp.zero)
            continue
        denom = int_power(num / den, n, mp) - c2
        if denom == 0:
            raise SingularTermError(f"tan power equals cos(2 theta) at j={j}", index=j)
        out.append(sj * mp.atan(s2 / denom))
    return out


def cor3_sum(n: int, theta, ctx: Optional[PrecisionContext] = None) -> IdentityReport:
    ctx = resolve(ctx)
    mp = ctx.mp
    t0 = time.perf_counter()
    theta = mp.mpf(theta)
    lhs = mp.fsum(cor3_terms(n, theta, ctx))
    return make_report("cor3", "Corollary 3", {"n": n, "theta": theta}, lhs, mp.pi / 4 - theta, ctx, t0, relax=POLE_RELAX)


def cor3_display_terms(theta, ctx: Optional[PrecisionContext] = None) -> list:
    """The three n = 3 display terms, summing to ``theta - pi/4``."""
    mp = resolve(ctx).mp
    theta = mp.mpf(theta)
    s2, c2 = mp.sin(2 * theta), mp.cos(2 * theta)

    def t(angle):
        return mp.atan(s2 / (c2 + mp.cot(angle) ** 3))

    return [t(mp.pi / 12 + theta / 3), -t(mp.pi / 12 - theta / 3), t(theta / 3 - mp.pi / 4)]


# --- complex extension of the cosine sum -----------------------------------


def _complex_half(n: int, m: int, alpha, shift, rot, mp):
    phase = mp.exp(1j * rot)
    total = mp.mpc(0)
    for j in range(-n, n + 1):
        c = mp.cos((shift + mp.pi * j) / (2 * n + 1))
        z = _root_gap(alpha * c, mp) ** (2 * m + 1) * phase
        v = complex_atan(z, mp)
        total += v if (n + j) % 2 == 0 else -v
    return total


def complex_generalization_residual(
    n: int, m: int, alpha, theta, phi, ctx: Optional[PrecisionContext] = None
) -> IdentityReport:
    """Real part of the rotated cosine sums against ``pi/4``; recorded as an unproved claim."""
    if n < 0 or m < 0:
        raise DomainError("n and m must be non-negative")
    check_angle(theta, "theta")
    check_angle(phi, "phi")
    ctx = resolve(ctx)
    mp = ctx.mp
    t0 = time.perf_counter()
    alpha, theta, phi = mp.mpf(alpha), mp.mpf(theta), mp.mpf(phi)
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    beta = 1 / alpha
    total = _complex_half(n, m, alpha, theta, phi, mp) + _complex_half(m, n, beta, phi, theta, mp)
    params = {"n": n, "m": m, "alpha": alpha, "theta": theta, "phi": phi}
    return make_report(
        "complex-gen", "Complex generalization of Theorem 1", params, mp.re(total), mp.pi / 4, ctx, t0,
        notes=[UNPROVED_NOTE],
    )
