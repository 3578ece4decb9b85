from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from atanforge.precision import (
    ENV_DIGITS,
    DomainError,
    PrecisionContext,
    acosh_solve,
    asinh_solve,
    complex_atan,
    default_context,
    default_tolerance,
    from_decimal,
    int_power,
    sum_with_tail,
    to_decimal,
)


@pytest.mark.parametrize("digits, tol", [(30, 1e-15), (60, 1e-40), (100, 1e-80)])
def test_tolerance_tiers(digits, tol):
    assert default_tolerance(digits) == pytest.approx(tol, rel=1e-12)
    assert float(PrecisionContext(digits).tolerance()) == pytest.approx(tol, rel=1e-12)


def test_context_defaults_and_guard():
    ctx = PrecisionContext()
    assert ctx.digits == 60
    assert ctx.mp.dps == 70
    assert ctx.tail_target == pytest.approx(1e-62)


@pytest.mark.parametrize("kwargs", [{"digits": 10}, {"digits": 60, "verify_tolerance": 1e-55},
                                    {"max_terms": 0}, {"tail_target": 0.0}])
def test_context_rejects_bad_settings(kwargs):
    with pytest.raises(DomainError):
        PrecisionContext(**kwargs)


def test_contexts_do_not_share_precision():
    lo, hi = PrecisionContext(30), PrecisionContext(100)
    assert lo.mp.dps == 40 and hi.mp.dps == 110
    assert mpmath.mp.dps == 15  # global context untouched


def test_env_var_sets_default_digits(monkeypatch):
    monkeypatch.setenv(ENV_DIGITS, "45")
    assert default_context().digits == 45
    monkeypatch.setenv(ENV_DIGITS, "many")
    with pytest.raises(DomainError):
        default_context()


def test_asinh_solve_known_values(ctx, mp):
    assert asinh_solve(0, ctx) == 0
    assert abs(asinh_solve(mp.mpf(3) / 4, ctx) - mp.log(2)) < mp.mpf(10) ** -65  # sinh(ln 2) = 3/4
    tiny = mp.mpf("1e-30")
    # series asinh c = c - c^3/6 + ...
    assert abs(asinh_solve(tiny, ctx) - (tiny - tiny ** 3 / 6)) < mp.mpf(10) ** -150


@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
def test_asinh_solve_inverts_sinh(c):
    ctx = PrecisionContext(60)
    mp = ctx.mp
    a = asinh_solve(c, ctx)
    assert abs(mp.sinh(a) - c) <= mp.mpf(10) ** -60 * max(1, abs(c))
    assert asinh_solve(-c, ctx) == -a


def test_acosh_solve(ctx, mp):
    assert acosh_solve(1, ctx) == 0
    assert abs(acosh_solve(2, ctx) - mp.log(2 + mp.sqrt(3))) < mp.mpf(10) ** -65
    with pytest.raises(DomainError):
        acosh_solve(mp.mpf("0.999"), ctx)


def test_sum_with_tail_geometric(ctx, mp):
    out = sum_with_tail(lambda n: mp.mpf(2) ** -n, lambda N: mp.mpf(2) ** -N, ctx)
    assert out.converged
    assert abs(out.value - 2) <= out.tail_bound
    assert out.tail_bound <= ctx.tail_target


def test_sum_with_tail_flags_unconverged(mp):
    ctx = PrecisionContext(60, max_terms=10)
    out = sum_with_tail(lambda n: mp.one / (n + 1) ** 2, lambda N: mp.one / (N + 1), ctx)
    assert not out.converged and out.terms_used == 10


@given(st.fractions(min_value=-3, max_value=3).filter(lambda f: f != 0), st.integers(-150, 150))
def test_int_power_matches_exact_rationals(base, e):
    ctx = PrecisionContext(60)
    mp = ctx.mp
    b = mp.mpf(base.numerator) / base.denominator
    exact = Fraction(base) ** e
    got = int_power(b, e, mp)
    want = mp.mpf(exact.numerator) / exact.denominator
    assert abs(got - want) <= mp.mpf(10) ** -55 * abs(want)


def test_complex_atan_agrees_with_real_branch(ctx, mp):
    for x in ("0.3", "-2.5", "40"):
        assert abs(complex_atan(mp.mpf(x), mp) - mp.atan(mp.mpf(x))) < mp.mpf(10) ** -65
    z = mp.mpc("0.2", "0.4")
    assert abs(complex_atan(z, mp) - mp.re(mp.atan(z))) < mp.mpf(10) ** -65
    with pytest.raises(DomainError):
        complex_atan(1j, mp)


@given(st.integers(min_value=-10 ** 30, max_value=10 ** 30), st.integers(min_value=1, max_value=10 ** 30))
def test_decimal_round_trip(num, den):
    ctx = PrecisionContext(60)
    x = ctx.mp.mpf(num) / den * ctx.mp.pi
    text = to_decimal(x, ctx)
    assert "e" in text or "." in text
    assert from_decimal(text, ctx) == x
