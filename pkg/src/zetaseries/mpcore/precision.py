"""Working-precision configuration, tolerances and the summation report type."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Any, Tuple

import mpmath

GUARD_BITS = 32


@dataclass(frozen=True)
class Precision:
    """Binary working precision plus the number of decimal digits to print.

    Every top-level evaluation builds its own :class:`mpmath.MPContext` from
    this object, so evaluations never touch the global ``mpmath.mp`` state and
    may run concurrently.
    """

    bits: int = 256
    out_digits: int = 30

    def __post_init__(self):
        if int(self.bits) != self.bits or int(self.out_digits) != self.out_digits:
            raise ValueError("bits and out_digits must be integers")
        if self.bits < 64:
            raise ValueError(f"bits must be >= 64, got {self.bits}")
        if self.out_digits < 1:
            raise ValueError(f"out_digits must be >= 1, got {self.out_digits}")
        need = math.ceil(self.out_digits * math.log2(10)) + GUARD_BITS
        if self.bits < need:
            raise ValueError(
                f"{self.out_digits} output digits need at least {need} bits, got {self.bits}")

    def context(self) -> mpmath.ctx_mp.MPContext:
        ctx = mpmath.MPContext()
        ctx.prec = self.bits
        return ctx


def to_mpf(ctx, x: Any):
    """Convert ``x`` to a real ``ctx.mpf`` without passing through a double.

    Strings are parsed at working precision and may be decimals (``"0.25"``)
    or ratios (``"1/4"``). Floats are taken at their exact binary value.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a real argument")
    if isinstance(x, int):
        return ctx.mpf(x)
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, Decimal):
        x = str(x)
    if isinstance(x, str):
        text = x.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return to_mpf(ctx, num) / to_mpf(ctx, den)
        return ctx.mpf(text)
    if hasattr(x, "_mpf_") or isinstance(x, float):
        return ctx.convert(x)
    raise TypeError(f"cannot interpret {x!r} as a real number")


def _to_fraction(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Decimal)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if hasattr(x, "_mpf_"):
        man, exp = mpmath.mpf(x).man_exp
        return Fraction(man) * Fraction(2) ** exp
    raise TypeError(f"cannot interpret {x!r} as a tolerance")


@dataclass(frozen=True)
class Tolerance:
    """Target absolute error of a final value, stored exactly as a rational."""

    abs_tol: Fraction

    def __init__(self, abs_tol: Any):
        value = _to_fraction(abs_tol)
        if value <= 0:
            raise ValueError(f"abs_tol must be positive, got {abs_tol!r}")
        object.__setattr__(self, "abs_tol", value)

    def mpf(self, ctx):
        tol = ctx.mpf(self.abs_tol.numerator) / self.abs_tol.denominator
        if tol <= 16 * ctx.eps:
            raise ValueError(f"tolerance {float(self.abs_tol):g} is below the "
                             f"resolution of {ctx.prec}-bit arithmetic")
        return tol

    def scaled(self, factor) -> "Tolerance":
        return Tolerance(self.abs_tol * _to_fraction(factor))

    def __float__(self):
        return float(self.abs_tol)

    def __str__(self):
        return f"{float(self.abs_tol):g}"


def as_tolerance(tol: Any) -> Tolerance:
    return tol if isinstance(tol, Tolerance) else Tolerance(tol)


DEFAULT_PRECISION = Precision()
DEFAULT_TOLERANCE = Tolerance("1e-12")


@dataclass(frozen=True)
class SumReport:
    """A series value with its error bound and convergence telemetry.

    ``history`` optionally records ``(n, partial_sum, cumulative_inner_terms)``
    after each outer term, in ascending ``n``.
    """

    value: Any
    error_bound: Any
    outer_terms: int = 0
    inner_terms_total: int = 0
    decay_ratio: float = math.nan
    history: Tuple[Tuple[int, Any, int], ...] = field(default=(), repr=False)

    def __post_init__(self):
        if self.error_bound < 0:
            raise ValueError("error_bound must be nonnegative")

    def shifted(self, offset, extra_bound=0) -> "SumReport":
        """Same report with ``offset`` added to the value (and every partial)."""
        return SumReport(
            value=self.value + offset,
            error_bound=self.error_bound + extra_bound,
            outer_terms=self.outer_terms,
            inner_terms_total=self.inner_terms_total,
            decay_ratio=self.decay_ratio,
            history=tuple((n, p + offset, c) for n, p, c in self.history),
        )
