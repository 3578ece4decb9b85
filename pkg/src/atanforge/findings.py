"""Recorded findings: printed formulas that disagree with computation, and claims
taken on assumption. Each finding carries evidence measured at run time."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import finite_identities as fi, grid, series
from .precision import PrecisionContext, resolve

ERRATUM = "erratum"
ASSUMPTION = "assumption"
UNPROVED = "unproved"


@dataclass
class Finding:
    id: str
    kind: str
    title: str
    statement: str
    evidence: dict = field(default_factory=dict)
    confirmed: bool = False

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "title": self.title,
            "statement": self.statement,
            "evidence": dict(self.evidence),
            "confirmed": self.confirmed,
        }


def _s(mp, v, digits=12):
    return mp.nstr(v, digits)


def fibonacci_index(ctx: PrecisionContext) -> Finding:
    mp = ctx.mp
    out = series.fibonacci_arctan_sum(ctx)
    target = series.fibonacci_target(ctx)
    gap = abs(out.value - target)
    # arctan(1/F_0) read as its limit pi/2, with sign (-1)^{0+1}
    shifted = out.value - mp.pi / 2
    ok = gap <= ctx.tolerance() and abs(shifted - target) > 1
    return Finding(
        "fibonacci-index", ERRATUM, "Fibonacci sum index convention",
        "The alternating Fibonacci arctangent sum is printed from n = 0, where F_0 = 0 leaves the term undefined. "
        "Summing from n = 1 reproduces arctan((sqrt5 - 1)/2).",
        {
            "sum_from_1": _s(mp, out.value, 20),
            "target": _s(mp, target, 20),
            "residual_from_1": _s(mp, gap, 5),
            "terms_used": out.terms_used,
            "with_n0_term_as_limit": _s(mp, shifted, 20),
        },
        ok,
    )


def closed_form_constant(ctx: PrecisionContext, n_max: int = 12) -> Finding:
    mp = ctx.mp
    worst_half = mp.zero
    printed_hits = 0
    boundary = []
    for n in range(2, n_max + 1):
        for x in range(1, n + 1):
            cf = grid.closed_form_sum(n, x, ctx)
            if x == n:
                boundary.append(abs(cf.value))
                continue
            worst_half = max(worst_half, abs(cf.value - cf.half_target))
            printed_hits += cf.matches == "printed"
    small = grid.closed_form_sum(2, 1, ctx)
    ok = worst_half <= ctx.tolerance(grid.GRID_RELAX) and printed_hits == 0
    return Finding(
        "closed-form-constant", ERRATUM, "Diagonal closed form -x^2/(2n), not -x^2/n",
        "Setting n = m and x = y in the grid identity gives 2n S = -x^2, so S = -x^2/(2n). "
        "The printed -x^2/n fails already at n = 2, x = 1. At x = n every sine factor vanishes and the sum is 0.",
        {
            "n2_x1_sum": _s(mp, small.value, 20),
            "n2_x1_half_target": _s(mp, small.half_target, 20),
            "n2_x1_printed_target": _s(mp, small.printed_target, 20),
            "max_gap_to_half_interior": _s(mp, worst_half, 5),
            "points_matching_printed": printed_hits,
            "max_abs_sum_at_x_eq_n": _s(mp, max(boundary), 5),
        },
        ok,
    )


def boundary_signs(ctx: PrecisionContext, n: int = 4, m: int = 4) -> Finding:
    mp = ctx.mp
    spec = grid.GridSpec(n, m)
    target = grid.minus_xy(n, m, mp)
    plus_xy = grid.GridField.from_function(n, m, lambda x, y: mp.mpf(x * y))
    printed = grid.field_sum(grid.eigen_solution_f1(spec, ctx, sign=+1), grid.eigen_solution_f2(spec, ctx, sign=+1))
    flipped = grid.field_sum(grid.eigen_solution_f1(spec, ctx, sign=-1), grid.eigen_solution_f2(spec, ctx, sign=-1))
    printed_vs_minus = printed.max_abs_diff(target)
    printed_vs_plus = printed.max_abs_diff(plus_xy)
    flipped_vs_minus = flipped.max_abs_diff(target)
    tol = ctx.tolerance(grid.GRID_RELAX)
    ok = flipped_vs_minus <= tol and printed_vs_plus <= tol and printed_vs_minus > 1
    return Finding(
        "boundary-signs", ERRATUM, "Boundary signs of the two partial problems",
        "With top-row data +xm and right-column data +ny the partial solutions add up to +xy. "
        "The decomposition of -xy needs -xm and -ny.",
        {
            "grid": f"{n}x{m}",
            "printed_signs_vs_minus_xy": _s(mp, printed_vs_minus, 5),
            "printed_signs_vs_plus_xy": _s(mp, printed_vs_plus, 5),
            "flipped_signs_vs_minus_xy": _s(mp, flipped_vs_minus, 5),
        },
        ok,
    )


THETA_GRID = [("0.5", "0.3", "0.7"), ("2", "0.4", "1.1"), ("1", "1.2", "0.3")]


def theta_beta(ctx: PrecisionContext) -> Finding:
    mp = ctx.mp
    worst = mp.zero
    for a, t, p in THETA_GRID:
        rep = series.theta_transform_pair(mp.mpf(a), mp.mpf(t), mp.mpf(p), ctx)
        worst = max(worst, abs(rep.residual))
    # the chi4 pair's constraint alpha beta = pi^2/4 would be the other natural reading
    a, t, p = (mp.mpf(v) for v in THETA_GRID[0])
    beta = mp.pi ** 2 / (4 * a)
    alt = series.theta_series(a, t, p, ctx).value + series.theta_series(beta, p, t, ctx).value
    alt_gap = abs(alt - 2 / mp.pi * (mp.pi / 2 - t) * (mp.pi / 2 - p))
    ok = worst <= ctx.tolerance()
    return Finding(
        "theta-beta", ASSUMPTION, "Theta-pair constraint alpha beta = 1",
        "No relation between alpha and beta is printed for the theta-function pair. "
        "alpha beta = 1 is adopted and verified; pi^2/4 does not work.",
        {
            "points": len(THETA_GRID),
            "max_residual_beta_1_over_alpha": _s(mp, worst, 5),
            "residual_beta_pi2_over_4alpha": _s(mp, alt_gap, 5),
        },
        ok,
    )


COMPLEX_GRID = [(0, 0, "1", "0.3", "0.7"), (3, 5, "1.25", "0.5", "1.1"), (2, 7, "0.4", "1.2", "0.2")]


def complex_generalization(ctx: PrecisionContext) -> Finding:
    mp = ctx.mp
    worst = mp.zero
    for n, m, a, t, p in COMPLEX_GRID:
        rep = fi.complex_generalization_residual(n, m, mp.mpf(a), mp.mpf(t), mp.mpf(p), ctx)
        worst = max(worst, abs(rep.residual))
    return Finding(
        "complex-gen-unproved", UNPROVED, "Complex generalisation stated without proof",
        "The rotated form of the cosine reciprocal sum is stated without proof. "
        "It holds numerically at the sampled points; the suite records it and does not assert it.",
        {"points": len(COMPLEX_GRID), "max_residual": _s(mp, worst, 5)},
        worst <= ctx.tolerance(),
    )


FINDING_IDS = ("fibonacci-index", "closed-form-constant", "boundary-signs", "theta-beta", "complex-gen-unproved")


def collect(ctx: Optional[PrecisionContext] = None) -> list:
    ctx = resolve(ctx)
    return [
        fibonacci_index(ctx),
        closed_form_constant(ctx),
        boundary_signs(ctx),
        theta_beta(ctx),
        complex_generalization(ctx),
    ]
