"""Both-sides evaluators for the auxiliary identities behind the reciprocal sums.

Every ``*_pair`` returns ``(left, right)``; the two must agree. The
``*_residual`` functions return a single value that must vanish.
"""

from __future__ import annotations

from typing import Optional

from .number_theory import half_range, legendre3, sgn
from .precision import DomainError, PrecisionContext, SingularTermError, _working_mp, asinh_solve, resolve


def _cos_node(mp, j: int, n: int):
    return mp.cos(mp.pi * j / (2 * n + 1))


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# --- cosine kernels ----------------------------------------------------------


def lemma1_pair(n: int, m: int, j: int, alpha, ctx: Optional[PrecisionContext] = None):
    """``2 arctan(gap^{2m+1})`` against ``pi/2 - arctan(sinh((2m+1) a_j))``."""
    if abs(j) > n:
        raise DomainError("need |j| <= n")
    ctx = resolve(ctx)
    mp = ctx.mp
    alpha = mp.mpf(alpha)
    c = _cos_node(mp, j, n)
    x = alpha * c
    left = 2 * mp.atan((mp.sqrt(1 + x * x) - x) ** (2 * m + 1))
    a_j = asinh_solve(x, ctx)
    right = mp.pi / 2 - mp.atan(mp.sinh((2 * m + 1) * a_j))
    return left, right


def lemma2_pair(n: int, m: int, j: int, alpha, ctx: Optional[PrecisionContext] = None):
    if abs(j) > n:
        raise DomainError("need |j| <= n")
    ctx = resolve(ctx)
    mp = ctx.mp
    alpha = mp.mpf(alpha)
    x = alpha * _cos_node(mp, j, n)
    left = mp.pi / 2 - mp.atan(mp.sinh((2 * m + 1) * asinh_solve(x, ctx)))
    right = _sign(m) * mp.fsum(mp.atan(mp.cos(2 * mp.pi * k / (2 * m + 1)) / x) for k in range(-m, m + 1))
    return left, right


def sinh_factorization_pair(a, b, m: int, ctx: Optional[PrecisionContext] = None):
    """``sinh((2m+1)a) + sinh((2m+1)b)`` against its product over the shifted zeros."""
    if m < 0:
        raise DomainError("m must be >= 0")
    mp = resolve(ctx).mp
    a, b = mp.mpc(a), mp.mpc(b)
    s = 2 * m + 1
    left = mp.sinh(s * a) + mp.sinh(s * b)
    sa = mp.sinh(a)
    right = mp.mpf(2) ** (2 * m)
    for k in range(-m, m + 1):
        right *= sa + mp.sinh(b + 2j * mp.pi * k / s)
    return left, right


def lemma3_pair(n: int, m: int, j: int, alpha, ctx: Optional[PrecisionContext] = None):
    if m < 0 or abs(j) > n:
        raise DomainError("need m >= 0 and |j| <= n")
    mp = resolve(ctx).mp
    x = mp.mpf(alpha) * _cos_node(mp, j, n)
    s = 2 * m + 1
    left = mp.fsum(mp.atan(mp.cos(2 * mp.pi * k / s) / x) for k in range(-m, m + 1))
    right = mp.fsum(_sign(k) * mp.atan(mp.cos(mp.pi * k / s) / x) for k in range(-m, m + 1))
    return left, right


def lemma5_pair(z, m: int, ctx: Optional[PrecisionContext] = None):
    """Partial-fraction expansion of ``(2m+1) / (cosh((2m+1) asinh z) sqrt(z^2+1))``."""
    if m < 0:
        raise DomainError("m must be >= 0")
    ctx = resolve(ctx)
    mp = ctx.mp
    z = mp.mpf(z)
    s = 2 * m + 1
    left = s / (mp.cosh(s * asinh_solve(z, ctx)) * mp.sqrt(z * z + 1))
    terms = []
    for k in range(-m, m + 1):
        c = mp.cos(mp.pi * k / s)
        terms.append(_sign(m - k) * c / (z * z + c * c))
    return left, mp.fsum(terms)


def lemma6_kernel(z, n: int, m: int, ctx: Optional[PrecisionContext] = None):
    """Left side of the ``z -> 1/z, n <-> m`` transformation formula."""
    ctx = resolve(ctx)
    mp = ctx.mp
    z = mp.mpf(z)
    s = 2 * m + 1
    terms = []
    for j in range(-n, n + 1):
        c = _cos_node(mp, j, n)
        w = z * c
        v = s / mp.cosh(s * asinh_solve(w, ctx)) * c / mp.sqrt(1 + w * w)
        terms.append(v if (n + j) % 2 == 0 else -v)
    return mp.fsum(terms)


def lemma6_residual(z, n: int, m: int, ctx: Optional[PrecisionContext] = None):
    if n < 0 or m < 0:
        raise DomainError("n and m must be non-negative")
    mp = resolve(ctx).mp
    z = mp.mpf(z)
    if not z > 0:
        raise DomainError("z must be positive")
    return lemma6_kernel(z, n, m, ctx) - lemma6_kernel(1 / z, m, n, ctx) / (z * z)


def integration_step_pair(n: int, m: int, alpha, ctx: Optional[PrecisionContext] = None):
    """Integrated form of the transformation: cosine sum in ``alpha`` against the bracketed
    ``pi/4 - ...`` sum in ``beta = 1/alpha``."""
    ctx = resolve(ctx)
    mp = ctx.mp
    alpha = mp.mpf(alpha)
    beta = 1 / alpha

    def gap_sum(nn, mm, scale, inner):
        out = []
        for j in range(-nn, nn + 1):
            x = scale * _cos_node(mp, j, nn)
            v = inner(mp.atan((mp.sqrt(1 + x * x) - x) ** (2 * mm + 1)))
            out.append(v if (nn + j) % 2 == 0 else -v)
        return mp.fsum(out)

    left = gap_sum(n, m, alpha, lambda v: v)
    right = gap_sum(m, n, beta, lambda v: mp.pi / 4 - v)
    return left, right


# --- mod-3 kernels -----------------------------------------------------------


def lemma7_left(z, m: int, mp):
    """``sinh(m atanh z) / sinh(3m atanh z) / (1 - z^2)`` in branch-free rational form."""
    if z == 1 or z == -1:
        raise DomainError("z = +-1 is a pole")
    r = ((1 + z) / (1 - z)) ** m
    return 1 / ((r + 1 / r + 1) * (1 - z * z))


def lemma7_pair(z, m: int, ctx: Optional[PrecisionContext] = None):
    if m < 1:
        raise DomainError("m must be a positive integer")
    mp = resolve(ctx).mp
    z = mp.mpf(z)
    left = lemma7_left(z, m, mp)
    terms = []
    for k in range(1, half_range(m) + 1):
        w = legendre3(k)
        if w == 0 or 2 * k == 3 * m:
            continue
        t = mp.tan(mp.pi * k / (3 * m))
        terms.append(w * t / (z * z + t * t))
    right = mp.fsum(terms) / (m * mp.sqrt(3))
    return left, right


def _lemma8_sum(z, n: int, m: int, mp, guard):
    terms = []
    for j in range(1, half_range(n) + 1):
        w = legendre3(j)
        if w == 0 or 2 * j == 3 * n:
            # the tan(pi/2) summand tends to 0
            continue
        t = mp.tan(mp.pi * j / (3 * n))
        x = z * t
        if abs(abs(x) - 1) < guard:
            raise SingularTermError(f"z tan(pi j/3n) within {mp.nstr(guard, 3)} of +-1 at j={j}", index=j)
        terms.append(w * lemma7_left(x, m, mp) * t)
    return mp.fsum(terms)


def lemma8_sides(z, n: int, m: int, ctx: Optional[PrecisionContext] = None):
    """``(m S(z; n, m), (n / z^2) S(1/z; m, n))``; the two coincide."""
    if n < 1 or m < 1:
        raise DomainError("n and m must be positive")
    ctx = resolve(ctx)
    mp = ctx.mp
    z = mp.mpf(z)
    if not z > 0:
        raise DomainError("z must be positive")
    guard = mp.mpf(10) ** (-(ctx.digits // 2))
    return m * _lemma8_sum(z, n, m, mp, guard), n * _lemma8_sum(1 / z, m, n, mp, guard) / (z * z)


def lemma8_residual(z, n: int, m: int, ctx: Optional[PrecisionContext] = None):
    left, right = lemma8_sides(z, n, m, ctx)
    return left - right


def lemma9_quadrature(s, ctx: Optional[PrecisionContext] = None, tol: float = 1e-25):
    """``sqrt(3) * int_s^inf sinh t / sinh 3t dt`` by adaptive quadrature.

    Runs at reduced precision (it is an oracle, good to ``tol``). Nodes are
    split at unit steps beyond ``max(s, 1)``; the range past the last node
    ``T`` is bounded by ``e^{-2T}/2``. Returns ``(value, error_bound)``.
    """
    mp = resolve(ctx).mp
    qmp = _working_mp(max(15, int(-mp.log10(tol)) + 15))
    s = qmp.mpf(s)
    f = lambda t: 1 / (2 * qmp.cosh(2 * t) + 1)  # = sinh t / sinh 3t, overflow free
    start = max(s, qmp.one)
    T = start + 1
    while qmp.exp(-2 * T) / 2 > tol / 100:
        T += 1
    nodes = [s] if s >= 1 else [s, qmp.one]
    x = start + 1
    while x < T:
        nodes.append(x)
        x += 1
    nodes.append(T)
    value, err = qmp.quad(f, nodes, error=True)
    tail = qmp.exp(-2 * T) / 2
    bound = qmp.sqrt(3) * (err + tail)
    if bound > tol:
        raise ArithmeticError(f"quadrature error bound {qmp.nstr(bound, 3)} exceeds {tol:g}")
    return mp.mpf(qmp.sqrt(3) * value), mp.mpf(bound)


def lemma9_triple(s, ctx: Optional[PrecisionContext] = None):
    mp = resolve(ctx).mp
    s = mp.mpf(s)
    root3 = mp.sqrt(3)
    quad, _ = lemma9_quadrature(s, ctx)
    first = mp.pi / 6 - mp.atan(mp.tanh(s) / root3)
    second = mp.atan(root3 / (1 + 2 * mp.exp(2 * s)))
    return quad, first, second


# --- symmetric form and sign count -----------------------------------------


def th3_symmetric_form(n: int, m: int, alpha, theta, phi, ctx: Optional[PrecisionContext] = None):
    """``-theta + sum_{j<=n, k<=m} arctan(alpha tan((pi k + theta)/m) / tan((phi + pi j)/n))``."""
    mp = resolve(ctx).mp
    alpha, theta, phi = mp.mpf(alpha), mp.mpf(theta), mp.mpf(phi)
    tj = [mp.tan((phi + mp.pi * j) / n) for j in range(1, n + 1)]
    tk = [mp.tan((mp.pi * k + theta) / m) for k in range(1, m + 1)]
    return -theta + mp.fsum(mp.atan(alpha * b / a) for a in tj for b in tk)


def th3_symmetric_form_residual(n: int, m: int, alpha, theta, phi, ctx: Optional[PrecisionContext] = None):
    from .finite_identities import th3_half_sum

    ctx = resolve(ctx)
    return th3_half_sum(n, m, alpha, theta, phi, ctx) - th3_symmetric_form(n, m, alpha, theta, phi, ctx)


def sign_count_check(n: int, phi, ctx: Optional[PrecisionContext] = None) -> int:
    """``sum_{j=1}^{n} sgn(tan((phi + pi j)/n))``; equals 1 for odd n."""
    if n < 1 or n % 2 == 0:
        raise DomainError("n must be a positive odd integer")
    mp = resolve(ctx).mp
    phi = mp.mpf(phi)
    total = 0
    for j in range(1, n + 1):
        angle = (phi + mp.pi * j) / n
        c = mp.cos(angle)
        if c == 0:
            raise SingularTermError(f"tan pole at j={j}", index=j)
        total += sgn(mp.sin(angle) / c)
    return total
