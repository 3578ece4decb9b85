import pytest
from hypothesis import given, strategies as st

from atanforge import grid
from atanforge.grid import GridField, GridSpec
from atanforge.precision import DomainError, PrecisionContext

GRID_TOL = 1e-30


def test_first_exponent_n2(ctx, mp):
    a, b = grid.grid_exponents(GridSpec(2, 2), ctx)
    assert abs(a[1] - mp.log(2 + mp.sqrt(3))) < mp.mpf(10) ** -65
    assert a[0] == 0 and b[1] == a[1]


@pytest.mark.parametrize("n", [2, 3, 7, 12])
def test_recipes_agree_at_unit_anisotropy(ctx, mp, n):
    base = grid.grid_exponents(GridSpec(n, 3), ctx, "base")
    general = grid.grid_exponents(GridSpec(n, 3), ctx, "general")
    for u, v in zip(base[0] + base[1], general[0] + general[1]):
        assert abs(u - v) < mp.mpf(10) ** -60


def test_base_recipe_rejects_anisotropy(ctx):
    with pytest.raises(DomainError):
        grid.grid_exponents(GridSpec(3, 3, 2), ctx, "base")


def test_small_example(ctx, mp):
    rep = grid.dirichlet_identity_residual(GridSpec(2, 2, 1, 1, 1), ctx)
    assert abs(rep.lhs + 1) < GRID_TOL and rep.passed


def test_anisotropic_example(ctx, mp):
    rep = grid.dirichlet_identity_residual(GridSpec(5, 7, mp.mpf("1.6"), 3, 4), ctx)
    assert abs(rep.lhs + 12) < GRID_TOL and rep.passed


@given(st.integers(2, 9), st.integers(2, 9), st.sampled_from(["1", "0.5", "1.6", "3"]), st.data())
def test_identity_off_the_corner(n, m, a, data):
    ctx = PrecisionContext(60)
    x = data.draw(st.integers(1, n))
    y = data.draw(st.integers(1, m))
    spec = GridSpec(n, m, ctx.mp.mpf(a), x, y)
    rep = grid.dirichlet_identity_residual(spec, ctx)
    if (x, y) == (n, m):
        return
    assert rep.passed, rep.residual


def test_corner_is_a_known_failure(ctx, mp):
    # every sine factor vanishes at (n, m), so the left side is 0 while -xy = -nm
    rep = grid.dirichlet_identity_residual(GridSpec(4, 6, 1, 4, 6), ctx)
    assert abs(rep.lhs) < GRID_TOL and rep.rhs == -24 and not rep.passed
    assert any("corner" in n for n in rep.notes)


@pytest.mark.parametrize("n, x, want", [(2, 1, "-0.25"), (8, 5, "-1.5625"), (5, 2, "-0.4")])
def test_closed_form(ctx, mp, n, x, want):
    cf = grid.closed_form_sum(n, x, ctx)
    assert abs(cf.value - mp.mpf(want)) < GRID_TOL and cf.matches == "half"


def test_closed_form_at_boundary_is_zero(ctx, mp):
    # the x = n diagonal point is the corner, where the sum vanishes (not -x^2/(2n) = -3/2)
    cf = grid.closed_form_sum(3, 3, ctx)
    assert abs(cf.value) < GRID_TOL and cf.matches == "neither"
    assert not grid.closed_form_report(3, 3, ctx).passed


def test_closed_form_domain(ctx):
    with pytest.raises(DomainError):
        grid.closed_form_sum(1, 1, ctx)
    with pytest.raises(DomainError):
        grid.closed_form_sum(3, 4, ctx)


@pytest.mark.parametrize("a", ["1", "0.5", "1.6"])
def test_eigenfunctions_are_harmonic(ctx, mp, a):
    aniso = mp.mpf(a)
    spec = GridSpec(5, 4, aniso)
    xs, ys = grid.grid_exponents(spec, ctx)
    lam = grid.anisotropy_weight(aniso, mp)
    for j in range(1, 5):
        u1 = GridField.from_function(5, 4, lambda x, y: mp.sin(mp.pi * j * x / 5) * mp.sinh(y * xs[j]))
        for x in range(1, 5):
            for y in range(1, 4):
                assert abs(grid.discrete_laplacian(u1, x, y, lam, ctx)) < mp.mpf(10) ** -60
    for k in range(1, 4):
        u2 = GridField.from_function(5, 4, lambda x, y: mp.sin(mp.pi * k * y / 4) * mp.sinh(x * ys[k]))
        for x in range(1, 5):
            for y in range(1, 4):
                assert abs(grid.discrete_laplacian(u2, x, y, lam, ctx)) < mp.mpf(10) ** -60


def test_minus_xy_is_harmonic_for_any_weight(ctx, mp):
    f = grid.minus_xy(4, 5, mp)
    for lam in (1, mp.mpf("0.3"), 4):
        assert all(abs(grid.discrete_laplacian(f, x, y, lam, ctx)) < mp.mpf(10) ** -60 for x in range(1, 4) for y in range(1, 5))


def test_laplacian_interior_only(ctx, mp):
    with pytest.raises(DomainError):
        grid.discrete_laplacian(grid.minus_xy(3, 3, mp), 0, 1, 1, ctx)


@pytest.mark.parametrize("n, m, a", [(3, 3, "1"), (6, 4, "1.6"), (5, 7, "0.5")])
def test_direct_solve_recovers_minus_xy(ctx, mp, n, m, a):
    spec = GridSpec(n, m, mp.mpf(a))
    got = grid.solve_dirichlet_direct(spec, grid.minus_xy(n, m, mp), ctx)
    assert got.max_abs_diff(grid.minus_xy(n, m, mp)) < mp.mpf(10) ** -50


@pytest.mark.parametrize("n, m, a", [(4, 4, "1"), (6, 3, "1.6"), (3, 5, "0.5")])
def test_eigen_expansion_matches_direct_solve(ctx, mp, n, m, a):
    spec = GridSpec(n, m, mp.mpf(a))
    eig = grid.field_sum(grid.eigen_solution_f1(spec, ctx), grid.eigen_solution_f2(spec, ctx))
    for part, bnd in ((grid.eigen_solution_f1(spec, ctx), grid.boundary_f1(n, m, mp)),
                      (grid.eigen_solution_f2(spec, ctx), grid.boundary_f2(n, m, mp))):
        direct = grid.solve_dirichlet_direct(spec, bnd, ctx)
        assert part.max_abs_diff(direct, interior_only=True) < 1e-25
    assert eig.max_abs_diff(grid.minus_xy(n, m, mp), interior_only=True) < 1e-25


@pytest.mark.parametrize("n", [2, 3, 6, 9])
def test_fitted_coefficients(ctx, mp, n):
    fitted = grid.eigen_coefficients_f1(GridSpec(n, 4), ctx)
    for j, c in enumerate(fitted, start=1):
        assert abs(c - grid.identity_coefficient(j, n, mp)) < mp.mpf(10) ** -60


def test_identity_coefficient_zero_at_n(mp):
    assert grid.identity_coefficient(5, 5, mp) == 0


def test_grid_spec_validation():
    with pytest.raises(DomainError):
        GridSpec(1, 3)
    with pytest.raises(DomainError):
        GridSpec(3, 3, 1, 0, 1)
    with pytest.raises(DomainError):
        GridSpec(3, 3, -1)
