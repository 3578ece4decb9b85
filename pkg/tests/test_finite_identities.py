import pytest
from hypothesis import given, strategies as st

from atanforge import finite_identities as fi
from atanforge.precision import DomainError, PrecisionContext

odd = st.integers(0, 6).map(lambda k: 2 * k + 1)
alphas = st.sampled_from(["0.1", "0.37", "1", "1.9", "4.5", "10"])
angles = st.sampled_from(["0.2", "0.5", "0.9", "1.3"])


def test_th1_smallest_case(ctx, mp):
    # n = m = 0, alpha = 1: 2 arctan(sqrt2 - 1) = pi/4
    assert abs(fi.th1_half_sum(0, 0, 1, ctx) - mp.pi / 8) < mp.mpf(10) ** -65
    assert fi.th1_residual(fi.ReciprocalParams(0, 0, 1), ctx).passed


def test_th1_example(ctx):
    rep = fi.th1_residual(fi.ReciprocalParams(3, 5, ctx.mp.mpf("1.25")), ctx)
    assert rep.passed and abs(rep.residual) < 1e-40


@given(st.integers(0, 12), st.integers(0, 12), alphas)
def test_th1_property(n, m, a):
    ctx = PrecisionContext(60)
    assert fi.th1_residual(fi.ReciprocalParams(n, m, ctx.mp.mpf(a)), ctx).passed
    assert fi.th1_chi4_form_residual(fi.ReciprocalParams(n, m, ctx.mp.mpf(a)), ctx).passed


def test_reciprocal_params_validation():
    with pytest.raises(DomainError):
        fi.ReciprocalParams(1, 1, 0)
    with pytest.raises(DomainError):
        fi.ReciprocalParams(-1, 1, 1)
    with pytest.raises(DomainError):
        fi.ReciprocalParams(4, 3, 1, odd=True)


def test_beta_follows_working_precision(ctx, mp):
    a, b = fi.ReciprocalParams(2, 3, mp.mpf(3)).scales(mp)
    assert abs(a * b - 1) < mp.mpf(10) ** -68


@pytest.mark.parametrize("n", [0, 1, 2, 7, 20])
def test_cor1(ctx, n):
    assert fi.cor1_report(n, ctx).passed


@given(odd, odd, st.sampled_from(["0.2", "1", "1.7", "5"]))
def test_th2_property(n, m, a):
    ctx = PrecisionContext(60)
    assert fi.th2_residual(fi.ReciprocalParams(n, m, ctx.mp.mpf(a), odd=True), ctx).passed


def test_th2_rejects_even(ctx):
    with pytest.raises(DomainError):
        fi.th2_half_sum(4, 3, 1, ctx)


def test_th2_exact_pole_term(ctx, mp):
    # alpha = tan(pi/9) puts j = 1, n = 3 exactly on alpha = tan(pi j / 3n)
    a = mp.tan(mp.pi / 9)
    rep = fi.th2_residual(fi.ReciprocalParams(3, 5, a, odd=True), ctx)
    assert rep.passed


@pytest.mark.parametrize("n", [1, 3, 5, 21])
def test_cor2(ctx, n):
    assert fi.cor2_report(n, ctx).passed


def test_cor2_display_terms(ctx, mp):
    shown = fi.cor2_display_terms(ctx)
    assert abs(mp.fsum(shown) - mp.pi / 12) < mp.mpf(10) ** -65
    nonzero = [t for t in fi.th2_terms(3, 3, 1, ctx) if t != 0]
    assert len(nonzero) == 3
    assert max(abs(a - b) for a, b in zip(sorted(shown), sorted(-t for t in nonzero))) < mp.mpf(10) ** -65


@given(st.integers(0, 4).map(lambda k: 2 * k + 1), st.integers(0, 4).map(lambda k: 2 * k + 1),
       st.sampled_from(["0.5", "1", "2"]), angles, angles)
def test_th3_property(n, m, a, t, p):
    ctx = PrecisionContext(60)
    mp = ctx.mp
    rep = fi.th3_residual(fi.ReciprocalParams(n, m, mp.mpf(a), odd=True), fi.AngleParams(mp.mpf(t), mp.mpf(p)), ctx)
    assert rep.passed


@pytest.mark.parametrize("theta", [0, 1.6, -0.1])
def test_angle_domain(theta):
    with pytest.raises(DomainError):
        fi.AngleParams(theta, 0.5)


@pytest.mark.parametrize("n", [1, 3, 5, 9])
@pytest.mark.parametrize("theta", ["0.3", "0.7", "1.2"])
def test_cor3(ctx, mp, n, theta):
    assert fi.cor3_sum(n, mp.mpf(theta), ctx).passed


def test_cor3_display_terms(ctx, mp):
    theta = mp.mpf("0.7")
    shown = fi.cor3_display_terms(theta, ctx)
    assert abs(mp.fsum(shown) - (theta - mp.pi / 4)) < mp.mpf(10) ** -65
    j_neg, j_zero, j_pos = fi.cor3_terms(3, theta, ctx)
    for a, b in zip(shown, (-j_pos, -j_neg, -j_zero)):
        assert abs(a - b) < mp.mpf(10) ** -65


def test_complex_generalization_recorded_as_unproved(ctx, mp):
    rep = fi.complex_generalization_residual(3, 5, mp.mpf("1.25"), mp.mpf("0.5"), mp.mpf("1.1"), ctx)
    assert fi.UNPROVED_NOTE in rep.notes
    assert abs(rep.residual) < 1e-40
