"""Exact integer helpers: characters, the sign function s(x), Fibonacci numbers."""

from __future__ import annotations

from functools import lru_cache

from .precision import DomainError


def chi4(n: int) -> int:
    """Non-principal Dirichlet character mod 4, i.e. ``sin(pi n / 2)``."""
    return (0, 1, 0, -1)[n % 4]


def legendre3(j: int) -> int:
    """Legendre symbol ``(j/3)``: 1, -1, 0 on residues 1, 2, 0."""
    return (0, 1, -1)[j % 3]


def sgn_s(x) -> int:
    """Sign that maps zero to +1."""
    return 1 if x >= 0 else -1


def sgn(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@lru_cache(maxsize=4096)
def _fib_pair(n: int) -> tuple[int, int]:
    # fast doubling: returns (F_n, F_{n+1})
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    if n & 1:
        return d, c + d
    return c, d


def fibonacci(n: int) -> int:
    if n < 0:
        raise DomainError(f"Fibonacci index must be >= 0, got {n}")
    return _fib_pair(n)[0]


def alternating_sum_check(n: int) -> int:
    """``sum_{|j| <= n} (-1)^j``; equals ``(-1)^n``."""
    if n < 0:
        raise DomainError("n must be >= 0")
    return sum(1 if j % 2 == 0 else -1 for j in range(-n, n + 1))


def half_range(n: int) -> int:
    """Upper limit ``floor(3n/2)`` used by the mod-3 sums."""
    return (3 * n) // 2


def legendre3_partial_sum(n: int) -> int:
    """``sum_{j=1}^{floor(3n/2)} (j/3)`` for odd positive ``n``; equals 1."""
    if n < 1 or n % 2 == 0:
        raise DomainError(f"n must be an odd positive integer, got {n}")
    return sum(legendre3(j) for j in range(1, half_range(n) + 1))
