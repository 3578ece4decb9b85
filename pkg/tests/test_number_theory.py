import mpmath
import pytest
from hypothesis import given, strategies as st

from atanforge.number_theory import (
    alternating_sum_check,
    chi4,
    fibonacci,
    legendre3,
    legendre3_partial_sum,
    sgn,
    sgn_s,
)
from atanforge.precision import DomainError


def test_chi4_matches_sine_definition():
    for n in range(-40, 40):
        assert chi4(n) == int(mpmath.nint(mpmath.sin(mpmath.pi * n / 2)))


def test_legendre3_matches_sine_definition():
    for j in range(-40, 40):
        want = mpmath.nint(2 / mpmath.sqrt(3) * mpmath.sin(2 * mpmath.pi * j / 3))
        assert legendre3(j) == int(want)


@given(st.integers(-10 ** 4, 10 ** 4))
def test_characters_are_periodic(n):
    assert chi4(n + 4) == chi4(n)
    assert legendre3(n + 3) == legendre3(n)


@given(st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_legendre3_reflection(m, k):
    assert legendre3(3 * m - k) == -legendre3(k)


def test_sign_functions():
    assert sgn_s(0) == 1 and sgn_s(-0.5) == -1 and sgn_s(2) == 1
    assert sgn(0) == 0 and sgn(-3) == -1 and sgn(mpmath.mpf("1e-100")) == 1


def test_fibonacci_against_recurrence():
    a, b = 0, 1
    for n in range(300):
        assert fibonacci(n) == a
        a, b = b, a + b
    assert fibonacci(10) == 55
    assert fibonacci(60) == 1548008755920
    with pytest.raises(DomainError):
        fibonacci(-1)


@pytest.mark.parametrize("n, want", [(0, 1), (1, -1), (4, 1)])
def test_alternating_sum_examples(n, want):
    assert alternating_sum_check(n) == want


def test_alternating_sum_all():
    assert all(alternating_sum_check(n) == (-1) ** n for n in range(200))


@pytest.mark.parametrize("n", [1, 3, 5, 7, 99, 1001])
def test_legendre3_partial_sum(n):
    assert legendre3_partial_sum(n) == 1


@pytest.mark.parametrize("n", [0, 2, -3])
def test_legendre3_partial_sum_rejects(n):
    with pytest.raises(DomainError):
        legendre3_partial_sum(n)
