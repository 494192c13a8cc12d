"""Hurwitz and Riemann zeta values from dyadic double series, Brun's series,
functional-identity residuals and Dirichlet L-functions.

For s > 1 and a > 0,

    zeta(s, a) = a^-s + a^{1-s}/(s-1)
                 + sum_{n>=1} 2^{n(s-1)} sum_{j>=1} (-1)^j / (j + a 2^n)^s,

and at a = 1 this is Brun's zeta(s) = 1/(s-1) + 1 - beta(s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, List, Sequence, Tuple

from .errors import DomainError, IdentityViolation
from .mpcore import (DEFAULT_PRECISION, DEFAULT_TOLERANCE, MAX_OUTER_TERMS,
                     LogPowerKernel, PeriodicLattice, Precision, SumReport,
                     alternating_lattice_sum, as_tolerance, inner_tolerance,
                     sum_alternating, sum_geometric_outer, to_mpf,
                     trapezoid_lattice_sum)

POLE_EXCLUSION = Fraction(1, 10**6)


@dataclass(frozen=True)
class ZetaArgs:
    """Series domain: real s > 1 (away from the pole) and a > 0."""

    s: Any
    a: Any = 1

    def __post_init__(self):
        try:
            s = self.s if isinstance(self.s, Fraction) else Fraction(str(self.s))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot interpret s = {self.s!r}") from exc
        if s - 1 <= POLE_EXCLUSION:
            raise DomainError(f"series needs s > 1 + {float(POLE_EXCLUSION):g}, got s = {self.s}")

    def resolve(self, ctx):
        a = to_mpf(ctx, self.a)
        if a <= 0:
            raise DomainError(f"a must be positive, got {self.a!r}")
        return to_mpf(ctx, self.s), a


def _dyadic_zeta_sum(ctx, kernel, a, tol, max_outer, sign=1, record_history=False):
    inner_tol = inner_tolerance(ctx, tol, max_outer)

    def outer(n):
        step = ctx.ldexp(1, -n)
        return alternating_lattice_sum(kernel, a, step, step, inner_tol, ctx=ctx, sign=sign)

    return sum_geometric_outer(outer, tol, start=1, ctx=ctx, max_outer=max_outer,
                               record_history=record_history)


def hurwitz_zeta_series(s, a=1, tol=DEFAULT_TOLERANCE,
                        prec: Precision = DEFAULT_PRECISION, *,
                        max_outer=MAX_OUTER_TERMS, record_history=False) -> SumReport:
    """zeta(s, a) from the dyadic double series (real s > 1, a > 0).

    The inner sums alternate with terms that decrease from j = 0 on, the outer
    terms shrink like 2^-n / (2 a^s).
    """
    args = ZetaArgs(s, a)
    tol = as_tolerance(tol)
    ctx = prec.context()
    s_v, a_v = args.resolve(ctx)
    kernel = LogPowerKernel(ctx, 0, s_v)
    rep = _dyadic_zeta_sum(ctx, kernel, a_v, tol, max_outer, record_history=record_history)
    head = kernel.power(a_v) * (1 + a_v / (s_v - 1))
    return rep.shifted(head, 4 * ctx.eps * abs(head))


def hurwitz_zeta_base_k(s, a=1, k: int = 2, tol=DEFAULT_TOLERANCE,
                        prec: Precision = DEFAULT_PRECISION, *,
                        max_outer=MAX_OUTER_TERMS) -> SumReport:
    """zeta(s, a) from the base-k family, b = k^-n:

        a^-s/2 + a^{1-s}/(s-1)
        - sum_n k^-n sum_{j>=0} { (1/k - 1)/2 [(bj + a)^-s + (b(j+1) + a)^-s]
                                  + (1/k) sum_{m=1}^{k-1} (b(j + m/k) + a)^-s }.

    At k = 2 it coincides term by term with the dyadic form.
    """
    args = ZetaArgs(s, a)
    if int(k) != k or k < 2:
        raise DomainError(f"k must be an integer >= 2, got {k!r}")
    tol = as_tolerance(tol)
    ctx = prec.context()
    s_v, a_v = args.resolve(ctx)
    kernel = LogPowerKernel(ctx, 0, s_v)
    inner_tol = inner_tolerance(ctx, tol, max_outer)

    def outer(n):
        b = ctx.mpf(k) ** -n
        return trapezoid_lattice_sum(PeriodicLattice(kernel, a_v, b / k, k, b), inner_tol)

    rep = sum_geometric_outer(outer, tol, start=0, ctx=ctx, max_outer=max_outer)
    head = kernel.power(a_v) * (ctx.mpf(1) / 2 + a_v / (s_v - 1))
    return rep.shifted(head, 4 * ctx.eps * abs(head))


def brun_beta(s, tol=DEFAULT_TOLERANCE, prec: Precision = DEFAULT_PRECISION, *,
              max_outer=MAX_OUTER_TERMS, record_history=False) -> SumReport:
    """beta(s) = sum_{n,j>=1} (-1)^{j-1} 2^{n(s-1)} / (2^n + j)^s for s >= 1.

    beta(1) = 1 - gamma; for s > 1, zeta(s) = 1/(s-1) + 1 - beta(s).
    """
    tol = as_tolerance(tol)
    ctx = prec.context()
    s_v = to_mpf(ctx, s)
    if s_v < 1:
        raise DomainError(f"Brun's series needs s >= 1, got s = {s}")
    kernel = LogPowerKernel(ctx, 0, s_v)
    return _dyadic_zeta_sum(ctx, kernel, ctx.one, tol, max_outer, sign=-1,
                            record_history=record_history)


def brun_zeta(s, tol=DEFAULT_TOLERANCE, prec: Precision = DEFAULT_PRECISION) -> SumReport:
    """zeta(s) = 1/(s-1) + 1 - beta(s)."""
    ZetaArgs(s)
    ctx = prec.context()
    s_v = to_mpf(ctx, s)
    beta = brun_beta(s, tol, prec)
    head = 1 / (s_v - 1) + 1
    return SumReport(value=head - beta.value,
                     error_bound=beta.error_bound + 4 * ctx.eps * abs(head),
                     outer_terms=beta.outer_terms,
                     inner_terms_total=beta.inner_terms_total,
                     decay_ratio=beta.decay_ratio)


def eta_shifted(s, tol=DEFAULT_TOLERANCE, prec: Precision = DEFAULT_PRECISION) -> SumReport:
    """sum_{j>=1} (-1)^j / (j+1)^s by Euler-transformed alternating summation."""
    ctx = prec.context()
    s_v = to_mpf(ctx, s)
    if s_v <= 0:
        raise DomainError("the alternating series needs s > 0")
    return sum_alternating(lambda j: (-1) ** j * ctx.power(j + 1, -s_v), as_tolerance(tol),
                           ctx=ctx)


@dataclass(frozen=True)
class Residual:
    """One identity check: ``value`` should not exceed ``threshold`` in size."""

    name: str
    s: Any
    a: Any
    value: Any
    threshold: Any

    @property
    def passed(self) -> bool:
        return abs(self.value) <= self.threshold


DEFAULT_S_GRID = ("1.5", "2", "3")
DEFAULT_A_GRID = ("1/4", "1/2", "1", "2")


def default_step(tol) -> Fraction:
    """Central-difference step ``2^-m`` with ``h^2 <= tol * 2^-24``."""
    tol = as_tolerance(tol)
    m = math.ceil(math.log2(1 / float(tol.abs_tol)) / 2) + 12
    return Fraction(1, 2**m)


def identity_suite(s_grid: Sequence = DEFAULT_S_GRID, a_grid: Sequence = DEFAULT_A_GRID,
                   tol=DEFAULT_TOLERANCE, prec: Precision = DEFAULT_PRECISION, *,
                   h=None, perturb=0, raise_on_violation=True) -> List[Residual]:
    """Residuals of four identities evaluated through :func:`hurwitz_zeta_series`.

    * ``half``: zeta(s, 1/2) - (2^s - 1) zeta(s)
    * ``derivative``: central difference of zeta(s, .) at a, plus s zeta(s+1, a)
    * ``eta``: sum_{j>=1} (-1)^j/(j+1)^s - ((1 - 2^{1-s}) zeta(s) - 1)
    * ``recurrence``: zeta(s, a) - zeta(s, a+1) - a^-s

    ``perturb`` is added to the first evaluated quantity of every identity
    (harness self-test). With ``raise_on_violation`` an
    :class:`IdentityViolation` lists every residual above its threshold.
    """
    tol = as_tolerance(tol)
    ctx = prec.context()
    tol_v = tol.mpf(ctx)
    sub = tol.scaled(Fraction(1, 4))
    h = Fraction(h) if h is not None else default_step(tol)
    h_v = to_mpf(ctx, h)
    shift = to_mpf(ctx, perturb)
    cache = {}

    def zeta(s, a, t=sub):
        key = (str(s), str(a), t.abs_tol)
        if key not in cache:
            cache[key] = ctx.convert(hurwitz_zeta_series(s, a, t, prec).value)
        return cache[key]

    out = []
    for s in s_grid:
        s_v = to_mpf(ctx, s)
        z1 = zeta(s, 1)
        out.append(Residual("half", s, "1/2",
                            zeta(s, Fraction(1, 2)) + shift - (2**s_v - 1) * z1, tol_v))
        eta = ctx.convert(eta_shifted(s, sub, prec).value)
        out.append(Residual("eta", s, None,
                            eta + shift - ((1 - 2 ** (1 - s_v)) * z1 - 1), tol_v))
        for a in a_grid:
            a_f = a if isinstance(a, Fraction) else Fraction(str(a))
            a_v = to_mpf(ctx, a_f)
            out.append(Residual("recurrence", s, a,
                                zeta(s, a_f) + shift - zeta(s, a_f + 1) - a_v ** -s_v, tol_v))
            if a_f <= h:
                raise DomainError(f"difference step {h} too large for a = {a}")
            fine = tol.scaled(h / 4)
            diff = (zeta(s, a_f + h, fine) - zeta(s, a_f - h, fine)) / (2 * h_v)
            s1 = Fraction(str(s)) + 1
            lo = a_v - h_v
            zeta3 = lo ** -(s_v + 3) + lo ** -(s_v + 2) / (s_v + 2)
            truncation = h_v**2 / 6 * s_v * (s_v + 1) * (s_v + 2) * zeta3
            out.append(Residual("derivative", s, a,
                                diff + shift + s_v * zeta(s1, a_f), tol_v + truncation))
    if raise_on_violation:
        bad = [r for r in out if not r.passed]
        if bad:
            names = ", ".join(f"{r.name}(s={r.s}, a={r.a})" for r in bad)
            raise IdentityViolation(f"identity residuals above threshold: {names}", bad)
    return out


@dataclass(frozen=True)
class DirichletCharacter:
    """A real periodic coefficient table chi(1..m) of modulus m.

    With ``validate=True`` (the default) the table must be a real Dirichlet
    character: values in {-1, 0, 1}, zero exactly off the units mod m, and
    completely multiplicative on units. Sums of characters (see ``__add__``)
    are plain periodic tables and skip validation.
    """

    modulus: int
    values: Tuple[int, ...]
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        m = self.modulus
        object.__setattr__(self, "values", tuple(self.values))
        if int(m) != m or m < 1:
            raise DomainError(f"modulus must be a positive integer, got {m!r}")
        if len(self.values) != m:
            raise DomainError(f"need {m} values for modulus {m}, got {len(self.values)}")
        if self.validate:
            self._check()

    def _check(self):
        m = self.modulus
        units = [k for k in range(1, m + 1) if gcd(k, m) == 1]
        for k, v in enumerate(self.values, start=1):
            if v not in (-1, 0, 1):
                raise DomainError(f"chi({k}) = {v} is not in {{-1, 0, 1}}")
            if (gcd(k, m) == 1) != (v != 0):
                raise DomainError(f"chi({k}) = {v} contradicts gcd({k}, {m}) = {gcd(k, m)}")
        for i in units:
            for j in units:
                if self(i * j) != self(i) * self(j):
                    raise DomainError(f"chi is not multiplicative at ({i}, {j})")

    def __call__(self, n: int) -> int:
        return self.values[(n - 1) % self.modulus]

    @property
    def is_principal(self) -> bool:
        return all(v == (1 if gcd(k, self.modulus) == 1 else 0)
                   for k, v in enumerate(self.values, start=1))

    @classmethod
    def principal(cls, modulus: int) -> "DirichletCharacter":
        return cls(modulus, tuple(1 if gcd(k, modulus) == 1 else 0
                                  for k in range(1, modulus + 1)))

    @classmethod
    def parse(cls, modulus: int, text: str) -> "DirichletCharacter":
        """From a comma-separated table such as ``"1,0,-1,0"``."""
        try:
            values = tuple(int(v) for v in text.split(","))
        except ValueError as exc:
            raise DomainError(f"malformed character table {text!r}") from exc
        return cls(modulus, values)

    def __add__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if self.modulus != other.modulus:
            raise DomainError("characters must share a modulus")
        return DirichletCharacter(self.modulus,
                                  tuple(x + y for x, y in zip(self.values, other.values)),
                                  validate=False)


def dirichlet_l(s, chi: DirichletCharacter, tol=DEFAULT_TOLERANCE,
                prec: Precision = DEFAULT_PRECISION) -> SumReport:
    """L(s, chi) = m^-s sum_{k=1}^m chi(k) zeta(s, k/m), real s > 1."""
    ZetaArgs(s)
    tol = as_tolerance(tol)
    ctx = prec.context()
    s_v = to_mpf(ctx, s)
    m = chi.modulus
    support = [(k, c) for k, c in enumerate(chi.values, start=1) if c]
    if not support:
        return SumReport(value=ctx.zero, error_bound=ctx.zero)
    weight = sum(abs(c) for _, c in support)
    scale = ctx.mpf(m) ** -s_v
    # each term's error is multiplied by |chi(k)| m^-s
    share = tol.scaled(Fraction(1, 2 * weight)).abs_tol * Fraction(m) ** math.floor(float(s))
    part_tol = as_tolerance(share)
    total = []
    bound = ctx.zero
    outer = inner = 0
    for k, c in support:
        rep = hurwitz_zeta_series(s, Fraction(k, m), part_tol, prec)
        total.append(c * ctx.convert(rep.value))
        bound += abs(c) * ctx.convert(rep.error_bound)
        outer += rep.outer_terms
        inner += rep.inner_terms_total
    value = scale * ctx.fsum(total)
    bound = scale * bound + 4 * len(support) * ctx.eps * abs(value)
    return SumReport(value=value, error_bound=bound, outer_terms=outer,
                     inner_terms_total=inner)
