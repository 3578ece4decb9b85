"""Complete elliptic integrals through the AGM, the nome, and the modular-angle series."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .precision import DomainError, PrecisionContext, SeriesOutcome, resolve, sum_with_tail


@dataclass(frozen=True)
class EllipticData:
    k: object
    k_prime: object
    K: object
    K_prime: object
    q: object


def agm(a, b, ctx: Optional[PrecisionContext] = None, max_iter: int = 200):
    """Arithmetic-geometric mean of two positive reals."""
    ctx = resolve(ctx)
    mp = ctx.mp
    a, b = mp.mpf(a), mp.mpf(b)
    if a <= 0 or b <= 0:
        raise DomainError("agm needs positive arguments")
    eps = mp.mpf(10) ** -(ctx.digits + 5)
    for _ in range(max_iter):
        if abs(a - b) <= eps * a:
            break
        a, b = (a + b) / 2, mp.sqrt(a * b)
    return (a + b) / 2


def elliptic_bundle(k, ctx: Optional[PrecisionContext] = None) -> EllipticData:
    """K, K', and the nome for modulus ``0 < k < 1``."""
    ctx = resolve(ctx)
    mp = ctx.mp
    k = mp.mpf(k)
    if not 0 < k < 1:
        raise DomainError("modulus must lie in (0, 1)")
    kp = mp.sqrt((1 - k) * (1 + k))
    K = mp.pi / (2 * agm(1, kp, ctx))
    Kp = mp.pi / (2 * agm(1, k, ctx))
    q = mp.exp(-mp.pi * Kp / K)
    return EllipticData(k=k, k_prime=kp, K=K, K_prime=Kp, q=q)


def modular_angle_series(bundle: EllipticData, ctx: Optional[PrecisionContext] = None) -> SeriesOutcome:
    """``sum_{n>=0} (-1)^n arctan q^{(2n+1)/2}``; tends to ``arcsin(k) / 4``."""
    ctx = resolve(ctx)
    mp = ctx.mp
    q = mp.mpf(bundle.q)
    sq = mp.sqrt(q)
    if q == 0:
        return SeriesOutcome(mp.zero, 0, mp.zero, True)

    def term(n):
        v = mp.atan(sq * q ** n)
        return v if n % 2 == 0 else -v

    def tail(N):
        return sq * q ** (N + 1) / (1 - q)

    return sum_with_tail(term, tail, ctx)


def elliptic_K_quadrature(k, ctx: Optional[PrecisionContext] = None):
    """Test oracle: K(k) by Gauss-Legendre quadrature of the defining integral."""
    ctx = resolve(ctx)
    mp = ctx.mp
    k = mp.mpf(k)
    return mp.quad(lambda t: 1 / mp.sqrt(1 - (k * mp.sin(t)) ** 2), [0, mp.pi / 4, mp.pi / 2], method="gauss-legendre")
