"""Multiple-precision scalar layer shared by every evaluator.

Each :class:`PrecisionContext` owns a private ``mpmath.MPContext`` so that
evaluations at different precisions never touch mpmath's global state.
Scalars are the ``mpf``/``mpc`` types of that context.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import mpmath

GUARD_DIGITS = 10
DEFAULT_DIGITS = 60
DEFAULT_MAX_TERMS = 100_000
ENV_DIGITS = "ATANFORGE_DIGITS"


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


class SingularTermError(ArithmeticError):
    """A summand sits exactly on a pole that has no two-sided limit."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


@lru_cache(maxsize=None)
def _working_mp(dps: int) -> mpmath.ctx_mp.MPContext:
    mp = mpmath.MPContext()
    mp.dps = dps
    return mp


def default_tolerance(digits: int) -> float:
    # 30 -> 1e-15, 60 -> 1e-40, 100 -> 1e-80
    return 10.0 ** -max(digits - 20, digits // 2)


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision, verification tolerance and truncation policy.

    ``digits`` is the reporting precision; arithmetic runs with
    ``GUARD_DIGITS`` extra decimal digits.
    """

    digits: int = DEFAULT_DIGITS
    verify_tolerance: Optional[float] = None
    max_terms: int = DEFAULT_MAX_TERMS
    tail_target: Optional[float] = None

    def __post_init__(self):
        if self.digits < 15:
            raise DomainError(f"digits must be >= 15, got {self.digits}")
        if self.verify_tolerance is None:
            object.__setattr__(self, "verify_tolerance", default_tolerance(self.digits))
        if self.tail_target is None:
            object.__setattr__(self, "tail_target", 10.0 ** -min(self.digits + 2, 300))
        if not self.verify_tolerance >= 10.0 ** (-self.digits + 10) * (1 - 1e-12):
            raise DomainError(
                f"verify_tolerance {self.verify_tolerance:g} is tighter than "
                f"10^-{self.digits - 10} allowed at {self.digits} digits"
            )
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")
        if not self.tail_target > 0:
            raise DomainError("tail_target must be positive")

    @property
    def mp(self) -> mpmath.ctx_mp.MPContext:
        return _working_mp(self.digits + GUARD_DIGITS)

    def tolerance(self, relax: int = 0):
        """Verification tolerance, optionally loosened by ``10**relax``."""
        return self.mp.mpf(self.verify_tolerance) * self.mp.mpf(10) ** relax

    def with_digits(self, digits: int) -> "PrecisionContext":
        return PrecisionContext(digits=digits, max_terms=self.max_terms)

    def replace(self, **changes) -> "PrecisionContext":
        values = dict(
            digits=self.digits,
            verify_tolerance=self.verify_tolerance,
            max_terms=self.max_terms,
            tail_target=self.tail_target,
        )
        values.update(changes)
        return PrecisionContext(**values)


def default_context() -> PrecisionContext:
    """Context at the default precision, honouring ``ATANFORGE_DIGITS``."""
    raw = os.environ.get(ENV_DIGITS)
    if raw:
        try:
            digits = int(raw)
        except ValueError as exc:
            raise DomainError(f"{ENV_DIGITS}={raw!r} is not an integer") from exc
        return PrecisionContext(digits=digits)
    return PrecisionContext()


def resolve(ctx: Optional[PrecisionContext]) -> PrecisionContext:
    return default_context() if ctx is None else ctx


@dataclass(frozen=True)
class SeriesOutcome:
    """Truncated infinite sum with a certified bound on the omitted tail."""

    value: object
    terms_used: int
    tail_bound: object
    converged: bool = True


def asinh_solve(c, ctx: Optional[PrecisionContext] = None):
    """Return the real ``a`` with ``sinh(a) = c``, i.e. ``ln(c + sqrt(1 + c^2))``."""
    mp = resolve(ctx).mp
    c = mp.mpf(c)
    if c < 0:
        return -asinh_solve(-c, ctx)
    # log1p form keeps full relative accuracy for tiny c
    return mp.log1p(c + c * c / (mp.sqrt(1 + c * c) + 1))


def acosh_solve(c, ctx: Optional[PrecisionContext] = None):
    """Return ``a >= 0`` with ``cosh(a) = c``, i.e. ``ln(c + sqrt(c^2 - 1))``."""
    mp = resolve(ctx).mp
    c = mp.mpf(c)
    if c < 1:
        raise DomainError(f"acosh_solve needs c >= 1, got {mp.nstr(c, 20)}")
    d = c - 1
    return mp.log1p(d + mp.sqrt(d * (c + 1)))


def sum_with_tail(
    term: Callable[[int], object],
    tail_bound: Callable[[int], object],
    ctx: Optional[PrecisionContext] = None,
    start: int = 0,
) -> SeriesOutcome:
    """Sum ``term(start), term(start + 1), ...`` until the tail is certified small.

    ``tail_bound(N)`` must bound ``|sum_{n > N} term(n)|``; it is evaluated
    after ``term(N)`` has been added. Summation stops as soon as the bound
    drops to ``ctx.tail_target`` or ``ctx.max_terms`` terms have been used,
    in which case the outcome is flagged unconverged.
    """
    ctx = resolve(ctx)
    mp = ctx.mp
    target = mp.mpf(ctx.tail_target)
    total = mp.zero
    bound = mp.inf
    n = start
    used = 0
    while used < ctx.max_terms:
        total += term(n)
        used += 1
        bound = mp.mpf(tail_bound(n))
        if bound <= target:
            return SeriesOutcome(total, used, bound, True)
        n += 1
    return SeriesOutcome(total, used, bound, False)


def int_power(base, exponent: int, mp):
    """``base ** exponent`` for integer exponents.

    Above 64 the power goes through ``exp(e * ln|base|)`` with the sign
    tracked separately.
    """
    if abs(exponent) <= 64:
        return base ** exponent
    if base == 0:
        if exponent < 0:
            raise ZeroDivisionError("zero to a negative power")
        return mp.zero
    sign = -1 if (base < 0 and exponent % 2) else 1
    return sign * mp.exp(exponent * mp.log(abs(base)))


def complex_atan(z, mp):
    """Real part of the principal ``arctan z``, computed as ``arg((1 + iz)/(1 - iz)) / 2``."""
    z = mp.mpc(z)
    num = 1 + 1j * z
    den = 1 - 1j * z
    if num == 0 or den == 0:
        raise DomainError("complex arctan branch point z = +-i")
    return mp.arg(num / den) / 2


def to_decimal(x, ctx: PrecisionContext) -> str:
    """Decimal string that round-trips ``x`` at the context's working precision."""
    mp = ctx.mp
    if x is None:
        return ""
    x = mp.mpf(x)
    return mpmath.libmp.to_str(x._mpf_, mpmath.libmp.repr_dps(mp.prec))


def from_decimal(text: str, ctx: PrecisionContext):
    return ctx.mp.mpf(text)
