"""Discrete Dirichlet problem on an ``n x m`` rectangle and the reciprocal grid identity.

Separation of variables gives the partial solutions
``u1_j = sin(pi j x / n) sinh(y a_j)`` and ``u2_k = sin(pi k y / m) sinh(x b_k)``,
which are discrete harmonic for the operator with y-weight
``lambda = 1/aniso^2`` whenever ``sinh(a_j/2) = aniso * sin(pi j / 2n)`` and
``sinh(b_k/2) = sin(pi k / 2m) / aniso``. At ``aniso = 1`` this is
``cos(pi j / n) + cosh(a_j) = 2``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from .precision import DomainError, PrecisionContext, acosh_solve, asinh_solve, resolve
from .report import IdentityReport, make_report

# identity and closed form are checked at 1e-30 when digits = 60
GRID_RELAX = 10

CLOSED_FORM_NOTE = "printed closed form -x^2/n does not match; the sum equals -x^2/(2n)"


@dataclass(frozen=True)
class GridSpec:
    n: int
    m: int
    aniso: object = 1
    x: int = 1
    y: int = 1

    def __post_init__(self):
        if self.n < 2 or self.m < 2:
            raise DomainError("grid needs n, m >= 2")
        if not 1 <= self.x <= self.n or not 1 <= self.y <= self.m:
            raise DomainError("evaluation point must satisfy 1 <= x <= n, 1 <= y <= m")
        if not self.aniso > 0:
            raise DomainError("anisotropy parameter must be positive")

    def at(self, x: int, y: int) -> "GridSpec":
        return GridSpec(self.n, self.m, self.aniso, x, y)


@dataclass(frozen=True)
class GridField:
    """Values on ``0..n x 0..m``; ``values[x][y]``."""

    n: int
    m: int
    values: tuple

    def __getitem__(self, xy):
        x, y = xy
        return self.values[x][y]

    @staticmethod
    def is_boundary(n: int, m: int, x: int, y: int) -> bool:
        return x in (0, n) or y in (0, m)

    @classmethod
    def from_function(cls, n: int, m: int, f: Callable[[int, int], object]) -> "GridField":
        return cls(n, m, tuple(tuple(f(x, y) for y in range(m + 1)) for x in range(n + 1)))

    def max_abs_diff(self, other: "GridField", interior_only: bool = False):
        worst = 0
        for x in range(self.n + 1):
            for y in range(self.m + 1):
                if interior_only and self.is_boundary(self.n, self.m, x, y):
                    continue
                worst = max(worst, abs(self.values[x][y] - other.values[x][y]))
        return worst


def anisotropy_weight(aniso, mp):
    return 1 / mp.mpf(aniso) ** 2


@lru_cache(maxsize=4096)
def _exponents(count: int, scale_key: str, base: bool, dps_ctx: PrecisionContext):
    mp = dps_ctx.mp
    scale = mp.mpf(scale_key)
    if base:
        return tuple(acosh_solve(2 - mp.cos(mp.pi * j / count), dps_ctx) for j in range(count + 1))
    return tuple(2 * asinh_solve(scale * mp.sin(mp.pi * j / (2 * count)), dps_ctx) for j in range(count + 1))


def grid_exponents(spec: GridSpec, ctx: Optional[PrecisionContext] = None, recipe: str = "auto"):
    """``(a_0..a_n, b_0..b_m)`` for the grid; index 0 is the trivial exponent 0.

    ``recipe="base"`` uses the cosine/cosh condition (valid only at aniso = 1),
    ``"general"`` the sinh-half-angle form, ``"auto"`` picks base when aniso == 1.
    """
    ctx = resolve(ctx)
    mp = ctx.mp
    aniso = mp.mpf(spec.aniso)
    if recipe == "auto":
        recipe = "base" if aniso == 1 else "general"
    if recipe == "base":
        if aniso != 1:
            raise DomainError("the cosine recipe only covers aniso = 1")
        return _exponents(spec.n, "1", True, ctx), _exponents(spec.m, "1", True, ctx)
    if recipe != "general":
        raise DomainError(f"unknown recipe {recipe!r}")
    key_a = mp.nstr(aniso, mp.dps + 5)
    key_b = mp.nstr(1 / aniso, mp.dps + 5)
    return _exponents(spec.n, key_a, False, ctx), _exponents(spec.m, key_b, False, ctx)


def identity_coefficient(j: int, n: int, mp):
    """``(-1)^j cot(pi j / 2n)``, exactly zero at ``j = n``."""
    if j == n:
        return mp.zero
    c = mp.cot(mp.pi * j / (2 * n))
    return -c if j % 2 else c


def _half_sum(n: int, x: int, y: int, m: int, exps, mp):
    total = mp.zero
    for j in range(1, n + 1):
        w = identity_coefficient(j, n, mp)
        if w == 0:
            continue
        total += w * mp.sinh(y * exps[j]) / mp.sinh(m * exps[j]) * mp.sin(mp.pi * j * x / n)
    return total


@lru_cache(maxsize=1024)
def _half_table(n: int, m: int, exps: tuple, dps_ctx: PrecisionContext):
    """Per-grid factors of one half sum: ``w_j sinh(y a_j)/sinh(m a_j)`` for every y and
    ``sin(pi j x / n)`` for every x."""
    mp = dps_ctx.mp
    weights, sines = [], []
    for j in range(1, n):
        w = identity_coefficient(j, n, mp)
        denom = mp.sinh(m * exps[j])
        weights.append(tuple(w * mp.sinh(y * exps[j]) / denom for y in range(m + 1)))
        sines.append(tuple(mp.sin(mp.pi * j * x / n) for x in range(n + 1)))
    return tuple(weights), tuple(sines)


def _tabled_half_sum(n: int, x: int, y: int, m: int, exps, ctx: PrecisionContext):
    # j = n carries a zero weight and is left out of the table
    weights, sines = _half_table(n, m, tuple(exps), ctx)
    return ctx.mp.fsum(w[y] * s[x] for w, s in zip(weights, sines))


def dirichlet_lhs(spec: GridSpec, ctx: Optional[PrecisionContext] = None, recipe: str = "auto"):
    ctx = resolve(ctx)
    a, b = grid_exponents(spec, ctx, recipe)
    n, m, x, y = spec.n, spec.m, spec.x, spec.y
    return m * _tabled_half_sum(n, x, y, m, a, ctx) + n * _tabled_half_sum(m, y, x, n, b, ctx)


def dirichlet_identity_residual(spec: GridSpec, ctx: Optional[PrecisionContext] = None, recipe: str = "auto") -> IdentityReport:
    ctx = resolve(ctx)
    mp = ctx.mp
    t0 = time.perf_counter()
    lhs = dirichlet_lhs(spec, ctx, recipe)
    params = {"n": spec.n, "m": spec.m, "x": spec.x, "y": spec.y, "a": spec.aniso}
    notes = []
    if spec.x == spec.n and spec.y == spec.m:
        notes.append("corner (n, m): every sine factor vanishes, so the left side is 0")
    return make_report(
        "dirichlet", "Discrete Dirichlet reciprocal identity", params, lhs, mp.mpf(-spec.x * spec.y), ctx, t0,
        relax=GRID_RELAX, notes=notes,
    )


@dataclass(frozen=True)
class ClosedForm:
    value: object
    half_target: object
    printed_target: object
    matches: str  # "half", "printed" or "neither"


def closed_form_sum(n: int, x: int, ctx: Optional[PrecisionContext] = None) -> ClosedForm:
    """Diagonal sum ``sum_j (-1)^j cot(pi j/2n) sinh(x a_j)/sinh(n a_j) sin(pi j x/n)``."""
    if n < 2 or not 1 <= x <= n:
        raise DomainError("need n >= 2 and 1 <= x <= n")
    ctx = resolve(ctx)
    mp = ctx.mp
    a, _ = grid_exponents(GridSpec(n, n), ctx, "base")
    value = _half_sum(n, x, x, n, a, mp)
    half = -mp.mpf(x * x) / (2 * n)
    printed = -mp.mpf(x * x) / n
    tol = ctx.tolerance(GRID_RELAX)
    if abs(value - half) <= tol:
        matches = "half"
    elif abs(value - printed) <= tol:
        matches = "printed"
    else:
        matches = "neither"
    return ClosedForm(value, half, printed, matches)


def closed_form_report(n: int, x: int, ctx: Optional[PrecisionContext] = None) -> IdentityReport:
    ctx = resolve(ctx)
    t0 = time.perf_counter()
    cf = closed_form_sum(n, x, ctx)
    notes = [f"matches: {cf.matches}", f"printed target -x^2/n = {ctx.mp.nstr(cf.printed_target, 20)}"]
    if cf.matches == "half":
        notes.append(CLOSED_FORM_NOTE)
    if x == n:
        notes.append("x = n: every sine factor vanishes, so the sum is 0")
    return make_report(
        "dirichlet-closed", "Discrete Dirichlet diagonal closed form", {"n": n, "x": x}, cf.value, cf.half_target,
        ctx, t0, relax=GRID_RELAX, notes=notes,
    )


def discrete_laplacian(field: GridField, x: int, y: int, lam=1, ctx: Optional[PrecisionContext] = None):
    """Five-point operator with weight ``lam`` on the y-neighbours."""
    if not (0 < x < field.n and 0 < y < field.m):
        raise DomainError(f"({x}, {y}) is not an interior point")
    mp = resolve(ctx).mp
    lam = mp.mpf(lam)
    v = field.values
    return v[x - 1][y] + v[x + 1][y] + lam * (v[x][y - 1] + v[x][y + 1]) - (2 + 2 * lam) * v[x][y]


def solve_dirichlet_direct(spec: GridSpec, boundary: GridField, ctx: Optional[PrecisionContext] = None) -> GridField:
    """Interior values making the (anisotropic) Laplacian vanish, by dense LU at working precision."""
    ctx = resolve(ctx)
    mp = ctx.mp
    n, m = spec.n, spec.m
    lam = anisotropy_weight(spec.aniso, mp)
    nx, ny = n - 1, m - 1
    size = nx * ny
    idx = lambda x, y: (x - 1) * ny + (y - 1)
    A = mp.zeros(size, size)
    rhs = mp.zeros(size, 1)
    for x in range(1, n):
        for y in range(1, m):
            r = idx(x, y)
            A[r, r] = -(2 + 2 * lam)
            for (xx, yy, w) in ((x - 1, y, 1), (x + 1, y, 1), (x, y - 1, lam), (x, y + 1, lam)):
                if GridField.is_boundary(n, m, xx, yy):
                    rhs[r] -= w * boundary[xx, yy]
                else:
                    A[r, idx(xx, yy)] = w
    sol = mp.lu_solve(A, rhs)
    resid = mp.norm(A * sol - rhs, mp.inf)
    if resid > mp.mpf(10) ** (-ctx.digits + 15):
        raise ArithmeticError(f"linear solve residual {mp.nstr(resid, 5)} too large")

    def value(x, y):
        if GridField.is_boundary(n, m, x, y):
            return boundary[x, y]
        return sol[idx(x, y)]

    return GridField.from_function(n, m, value)


def minus_xy(n: int, m: int, mp) -> GridField:
    return GridField.from_function(n, m, lambda x, y: mp.mpf(-x * y))


def boundary_f1(n: int, m: int, mp, sign: int = -1) -> GridField:
    """Zero on ``x = 0``, ``x = n``, ``y = 0``; ``sign * x m`` on the top row (corner included)."""
    def f(x, y):
        if y == m:
            return mp.mpf(sign * x * m)
        return mp.zero
    return GridField.from_function(n, m, f)


def boundary_f2(n: int, m: int, mp, sign: int = -1) -> GridField:
    """Zero on ``y = 0``, ``y = m``, ``x = 0``; ``sign * n y`` on the right column below the corner."""
    def f(x, y):
        if x == n and y < m:
            return mp.mpf(sign * n * y)
        return mp.zero
    return GridField.from_function(n, m, f)


def sine_coefficients(row, n: int, mp):
    """Discrete sine transform of ``row[1..n-1]``: ``b_j = (2/n) sum_x row[x] sin(pi j x / n)``."""
    return [mp.zero] + [
        2 * mp.fsum(row[x] * mp.sin(mp.pi * j * x / n) for x in range(1, n)) / n for j in range(1, n)
    ]


def _eigen_field(n, m, exps, row, mp, transpose: bool):
    coeff = sine_coefficients(row, n, mp)
    amp = [mp.zero] + [coeff[j] / mp.sinh(m * exps[j]) for j in range(1, n)]

    def f(u, v):
        return mp.fsum(amp[j] * mp.sin(mp.pi * j * u / n) * mp.sinh(v * exps[j]) for j in range(1, n))

    if transpose:
        return lambda x, y: f(y, x)
    return f


def eigen_solution_f1(spec: GridSpec, ctx: Optional[PrecisionContext] = None, sign: int = -1) -> GridField:
    """Expansion in ``u1_j`` matching the top-row data ``sign * x m``.

    Boundary cells carry the prescribed data (the top-right corner is the
    only cell the sine basis cannot represent; it is not used by the stencil).
    """
    ctx = resolve(ctx)
    mp = ctx.mp
    n, m = spec.n, spec.m
    a, _ = grid_exponents(spec, ctx)
    bnd = boundary_f1(n, m, mp, sign)
    row = [bnd[x, m] for x in range(n + 1)]
    f = _eigen_field(n, m, a, row, mp, transpose=False)
    return GridField.from_function(n, m, lambda x, y: bnd[x, y] if GridField.is_boundary(n, m, x, y) else f(x, y))


def eigen_solution_f2(spec: GridSpec, ctx: Optional[PrecisionContext] = None, sign: int = -1) -> GridField:
    ctx = resolve(ctx)
    mp = ctx.mp
    n, m = spec.n, spec.m
    _, b = grid_exponents(spec, ctx)
    bnd = boundary_f2(n, m, mp, sign)
    col = [bnd[n, y] for y in range(m + 1)]
    f = _eigen_field(m, n, b, col, mp, transpose=True)
    return GridField.from_function(n, m, lambda x, y: bnd[x, y] if GridField.is_boundary(n, m, x, y) else f(x, y))


def eigen_coefficients_f1(spec: GridSpec, ctx: Optional[PrecisionContext] = None):
    """Fitted amplitudes of ``u1_j`` scaled by ``sinh(m a_j) / m``; the identity predicts
    ``(-1)^j cot(pi j / 2n)``."""
    ctx = resolve(ctx)
    mp = ctx.mp
    n, m = spec.n, spec.m
    row = [mp.mpf(-x * m) for x in range(n + 1)]
    coeff = sine_coefficients(row, n, mp)
    return [coeff[j] / m for j in range(1, n)]


def field_sum(f: GridField, g: GridField) -> GridField:
    return GridField.from_function(f.n, f.m, lambda x, y: f[x, y] + g[x, y])
