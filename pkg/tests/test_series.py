import pytest

from atanforge import series
from atanforge.precision import DomainError, PrecisionContext


def test_glaisher_telescoping_identity(ctx, mp):
    worst = max(abs(series.glaisher_telescoping_gap(n, ctx)) for n in range(1, 1001))
    assert worst < mp.mpf(10) ** -65


def test_glaisher_telescoped(ctx, mp):
    out = series.glaisher_sum("telescoped", ctx)
    assert abs(out.value - mp.pi / 2) < 1e-45
    for N in (1, 10, 1000):
        partial = series.glaisher_partial_telescoped(N, ctx)
        direct = mp.fsum(series.glaisher_term(n, mp) for n in range(N + 1))
        assert abs(partial - direct) < mp.mpf(10) ** -60
        assert abs(partial + mp.atan(mp.one / (2 * N + 2)) - mp.pi / 2) < mp.mpf(10) ** -65
    assert series.glaisher_term(0, mp) == mp.atan(2)


def test_glaisher_direct_tail_bound_is_honest(mp):
    ctx = PrecisionContext(30, max_terms=2000, tail_target=1e-3)
    out = series.glaisher_sum("direct", ctx)
    assert out.converged
    assert 0 < mp.pi / 2 - out.value <= out.tail_bound


def test_glaisher_direct_unconverged_flag():
    out = series.glaisher_sum("direct", PrecisionContext(30, max_terms=100))
    assert not out.converged


@pytest.mark.slow
def test_glaisher_direct_million(mp):
    gap = mp.pi / 2 - series.glaisher_direct_partial(10 ** 6, PrecisionContext(20))
    assert 0 < gap < 6e-7


def test_fibonacci_sum(ctx, mp):
    out = series.fibonacci_arctan_sum(ctx)
    target = series.fibonacci_target(ctx)
    assert mp.nstr(target, 10) == "0.5535743589"
    assert abs(out.value - target) < ctx.tolerance()
    short = series.fibonacci_arctan_sum(ctx.replace(tail_target=1e-32))
    assert short.terms_used <= 80 and abs(short.value - target) < 1e-30


def test_fibonacci_partial_sums_alternate(ctx, mp):
    target = series.fibonacci_target(ctx)
    signs = []
    for N in range(1, 12):
        out = series.fibonacci_arctan_sum(ctx.replace(max_terms=N))
        signs.append(out.value > target)
    assert all(a != b for a, b in zip(signs, signs[1:]))


@pytest.mark.parametrize("x", ["0.5", "1", "2"])
def test_bragg(ctx, mp, x):
    rep = series.bragg_report(mp.mpf(x), ctx)
    assert rep.passed and series.BRAGG_INDEX_NOTE in rep.notes


def test_bragg_printed_lower_index_overshoots(ctx, mp):
    x = mp.mpf(2)
    with_zero = series.bragg_sum(x, ctx, start=0).value
    gap = with_zero - series.bragg_target(x, ctx)
    assert abs(gap - mp.atan(mp.sinh(x))) < 1e-40
    assert series.bragg_sum(x, ctx).terms_used <= 80


def test_bragg_domain(ctx):
    with pytest.raises(DomainError):
        series.bragg_sum(0, ctx)


@pytest.mark.parametrize("a", ["0.5", "1", "pi/2", "3"])
def test_modular_chi4(ctx, mp, a):
    alpha = mp.pi / 2 if a == "pi/2" else mp.mpf(a)
    assert series.modular_chi4_pair(alpha, ctx).passed


def test_modular_chi4_symmetric_point(ctx, mp):
    assert abs(series.chi4_series(mp.pi / 2, ctx).value - mp.pi / 16) < 1e-40


def test_chi4_pair_matches_modular_angle(ctx, mp):
    from atanforge.elliptic import elliptic_bundle, modular_angle_series

    b = elliptic_bundle(mp.mpf("0.6"), ctx)
    # q = e^{-alpha} with alpha = pi K'/K; the chi4 series at alpha is the modular-angle series at q^2
    alpha = mp.pi * b.K_prime / b.K
    bundle_sq = elliptic_bundle(mp.mpf("0.6"), ctx)
    s_chi4 = series.chi4_series(alpha / 2, ctx).value
    s_mod = modular_angle_series(bundle_sq, ctx).value
    assert abs(s_chi4 - s_mod) < 1e-40


@pytest.mark.parametrize("a", ["1", "2*pi/3", "2"])
def test_cais(ctx, mp, a):
    alpha = 2 * mp.pi / 3 if a == "2*pi/3" else mp.mpf(a)
    assert series.cais_pair(alpha, ctx).passed


def test_cais_symmetric_point(ctx, mp):
    assert abs(series.cais_series(2 * mp.pi / 3, ctx).value - mp.pi / 36) < 1e-40


@pytest.mark.parametrize("a", ["0.8", "pi/3"])
def test_modular3(ctx, mp, a):
    alpha = mp.pi / 3 if a == "pi/3" else mp.mpf(a)
    assert series.modular3_pair(alpha, ctx).passed


def test_modular3_symmetric_point(ctx, mp):
    assert abs(series.modular3_series(mp.pi / 3, ctx).value - mp.pi / 9) < 1e-40


@pytest.mark.parametrize("a, t, p", [("1", "0.3", "0.7"), ("2", "0.4", "1.1"), ("0.5", "1.2", "0.3")])
def test_theta_pair(ctx, mp, a, t, p):
    rep = series.theta_transform_pair(mp.mpf(a), mp.mpf(t), mp.mpf(p), ctx)
    assert rep.passed and series.THETA_BETA_NOTE in rep.notes


def test_theta_pair_symmetric_half(ctx, mp):
    t = mp.mpf("0.6")
    half = series.theta_series(1, t, t, ctx).value
    assert abs(half - (mp.pi / 2 - t) ** 2 / mp.pi) < 1e-40


def test_theta_chi4_bijection(ctx, mp):
    assert series.theta_chi4_bijection_gap(40, ctx) < mp.mpf(10) ** -65
    quarter = mp.pi / 4
    total = series.theta_series(1, quarter, quarter, ctx).value
    assert abs(total - mp.pi / 16) < 1e-40


@pytest.mark.parametrize("make", [
    lambda ctx, mp: (lambda c: series.chi4_series(mp.mpf("0.7"), c)),
    lambda ctx, mp: (lambda c: series.cais_series(mp.mpf("1.3"), c)),
    lambda ctx, mp: (lambda c: series.modular3_series(mp.mpf("0.4"), c)),
    lambda ctx, mp: (lambda c: series.bragg_sum(mp.mpf("0.8"), c)),
    lambda ctx, mp: (lambda c: series.theta_series(mp.mpf("0.6"), mp.mpf("0.3"), mp.mpf("1.0"), c)),
    lambda ctx, mp: (lambda c: series.fibonacci_arctan_sum(c)),
])
def test_tail_bounds_are_honest(ctx, mp, make):
    fn = make(ctx, mp)
    loose = fn(ctx.replace(tail_target=1e-12))
    tight = fn(ctx)
    assert loose.terms_used < tight.terms_used
    assert abs(tight.value - loose.value) <= loose.tail_bound
