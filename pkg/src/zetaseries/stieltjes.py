"""Stieltjes constants gamma_ell(a) by three routes.

* :func:`stieltjes_dyadic` -- the dyadic double series
  gamma_ell(a) = -ln^{ell+1}(a)/(ell+1) + ln^ell(a)/a
                 + sum_{n>=1} sum_{j>=1} (-1)^j ln^ell(a + j/2^n) / (j + a 2^n).
* :func:`stieltjes_base_k` -- the base-k family (k >= 2), which reduces to
  the dyadic series at k = 2 and converges geometrically with ratio 1/k.
* :func:`gamma0_telescope` / :func:`euler_gamma_telescope` -- ell = 0 only,
  telescoping digamma differences.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any

from .errors import CrossCheckMismatch, DomainError
from .mpcore import (DEFAULT_PRECISION, DEFAULT_TOLERANCE, MAX_OUTER_TERMS,
                     LogPowerKernel, PeriodicLattice, Precision, SumReport,
                     alternating_lattice_sum, as_tolerance, inner_tolerance,
                     split_lattice_sum, sum_geometric_outer, to_mpf,
                     trapezoid_lattice_sum)
from .oracle import digamma_ref


class Method(str, enum.Enum):
    DYADIC = "dyadic"
    BASE_K = "base-k"
    PSI_TELESCOPE = "psi-telescope"


@dataclass(frozen=True)
class StieltjesQuery:
    ell: int
    a: Any
    method: Method = Method.DYADIC
    k: int = 2

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if int(self.ell) != self.ell or self.ell < 0:
            raise DomainError(f"ell must be a nonnegative integer, got {self.ell!r}")
        if int(self.k) != self.k or self.k < 2:
            raise DomainError(f"k must be an integer >= 2, got {self.k!r}")
        if self.method is Method.PSI_TELESCOPE and self.ell != 0:
            raise DomainError("the digamma telescope only gives ell = 0")


@dataclass(frozen=True)
class StieltjesValue:
    query: StieltjesQuery
    report: SumReport

    @property
    def value(self):
        return self.report.value

    @property
    def error_bound(self):
        return self.report.error_bound


def _parameter(ctx, a):
    value = to_mpf(ctx, a)
    if value <= 0:
        raise DomainError(f"a must be positive, got {a!r}")
    return value


def monotone_onset(ell: int, a, n: int, base: int = 2) -> int:
    """First j with ln^ell(a + j/base^n)/(j + a base^n) nonincreasing in j.

    ln^ell(x)/x peaks at x = e^ell, i.e. at j = base^n (e^ell - a).
    """
    if ell == 0:
        return 0
    return max(0, math.ceil(base**n * (math.exp(ell) - float(a))))


def _head(ctx, ell, a, weight):
    """-ln^{ell+1}(a)/(ell+1) + weight * ln^ell(a)/a."""
    L = ctx.ln(a)
    return -L ** (ell + 1) / (ell + 1) + weight * L**ell / a


def _finish(ctx, query, head, rep):
    bound = rep.error_bound + 4 * ctx.eps * (abs(head) + abs(rep.value))
    return StieltjesValue(query, SumReport(
        value=head + rep.value, error_bound=bound, outer_terms=rep.outer_terms,
        inner_terms_total=rep.inner_terms_total, decay_ratio=rep.decay_ratio,
        history=tuple((n, head + p, c) for n, p, c in rep.history)))


def stieltjes_dyadic(ell: int, a, tol=DEFAULT_TOLERANCE,
                     prec: Precision = DEFAULT_PRECISION, *,
                     max_outer=MAX_OUTER_TERMS, record_history=False) -> StieltjesValue:
    """gamma_ell(a) from the dyadic double series.

    The inner j-sums alternate; they are summed in consecutive pairs with an
    Euler-Maclaurin tail, the outer n-sum decays like 2^-n.
    """
    query = StieltjesQuery(ell, a, Method.DYADIC)
    tol = as_tolerance(tol)
    ctx = prec.context()
    a_v = _parameter(ctx, a)
    kernel = LogPowerKernel(ctx, ell, 1)
    inner_tol = inner_tolerance(ctx, tol, max_outer)

    def outer(n):
        step = ctx.ldexp(1, -n)
        return alternating_lattice_sum(kernel, a_v, step, step, inner_tol, ctx=ctx,
                                       monotone_from=monotone_onset(ell, a_v, n))

    rep = sum_geometric_outer(outer, tol, start=1, ctx=ctx, max_outer=max_outer,
                              record_history=record_history)
    return _finish(ctx, query, _head(ctx, ell, a_v, 1), rep)


def _base_k_sum(ctx, ell, a_v, k, tol, form, max_outer, record_history):
    kernel = LogPowerKernel(ctx, ell, 1)
    inner_tol = inner_tolerance(ctx, tol, max_outer)
    step_fn = split_lattice_sum if form == "b" else trapezoid_lattice_sum

    def outer(n):
        b = ctx.mpf(k) ** -n
        lattice = PeriodicLattice(kernel, a_v, b / k, k, b)
        return step_fn(lattice, inner_tol)

    rep = sum_geometric_outer(outer, tol, start=0, ctx=ctx, max_outer=max_outer,
                              record_history=record_history)
    head = _head(ctx, ell, a_v, 1 if form == "b" else ctx.mpf(1) / 2)
    return head, rep


def stieltjes_base_k(ell: int, a, k: int = 2, tol=DEFAULT_TOLERANCE,
                     prec: Precision = DEFAULT_PRECISION, *, cross_check=False,
                     max_outer=MAX_OUTER_TERMS, record_history=False) -> StieltjesValue:
    """gamma_ell(a) from the base-k double series, b = k^-n:

        -ln^{ell+1}(a)/(ell+1) + ln^ell(a)/a
        - (1/k) sum_n sum_{m=1}^{k-1} ln^ell(bm/k + a) / (m/k + a k^n)
        - sum_n sum_{j>=1} [ (1/k - 1) ln^ell(bj + a) / (j + a k^n)
                            + (1/k) sum_m ln^ell(b(j + m/k) + a) / (j + m/k + a k^n) ].

    Each j-group has weights summing to zero and is combined before
    accumulation. With ``cross_check=True`` the trapezoidal form (endpoint
    weights halved, leading term ln^ell(a)/(2a)) is evaluated as well and
    :class:`CrossCheckMismatch` is raised if the two disagree beyond their
    combined bounds.
    """
    query = StieltjesQuery(ell, a, Method.BASE_K, k)
    tol = as_tolerance(tol)
    ctx = prec.context()
    a_v = _parameter(ctx, a)
    head, rep = _base_k_sum(ctx, ell, a_v, k, tol, "b", max_outer, record_history)
    result = _finish(ctx, query, head, rep)
    if cross_check:
        other = stieltjes_base_k_trapezoid(ell, a, k, tol, prec, max_outer=max_outer)
        gap = abs(result.value - ctx.convert(other.value))
        if gap > result.error_bound + other.error_bound:
            raise CrossCheckMismatch(
                f"base-k forms differ by {ctx.nstr(gap, 5)} at ell={ell}, a={a}, k={k}")
    return result


def stieltjes_base_k_trapezoid(ell: int, a, k: int = 2, tol=DEFAULT_TOLERANCE,
                               prec: Precision = DEFAULT_PRECISION, *,
                               max_outer=MAX_OUTER_TERMS) -> StieltjesValue:
    """gamma_ell(a) from the trapezoidal base-k form:

        ln^ell(a)/(2a) - ln^{ell+1}(a)/(ell+1)
        - sum_n k^-n sum_{j>=0} { (1/k - 1)/2 [g(bj + a) + g(b(j+1) + a)]
                                  + (1/k) sum_m g(b(j + m/k) + a) },

    g(x) = ln^ell(x)/x. Its outer terms decay like k^-2n.
    """
    query = StieltjesQuery(ell, a, Method.BASE_K, k)
    tol = as_tolerance(tol)
    ctx = prec.context()
    a_v = _parameter(ctx, a)
    head, rep = _base_k_sum(ctx, ell, a_v, k, tol, "a", max_outer, False)
    return _finish(ctx, query, head, rep)


def _digamma_terms(ctx, prec, tol, term_fn, max_outer):
    digamma_err = 4 * ctx.ldexp(1, -(prec.bits - 16))

    def outer(n):
        return SumReport(value=term_fn(n), error_bound=digamma_err)

    return sum_geometric_outer(outer, tol, start=0, ctx=ctx, max_outer=max_outer)


def euler_gamma_telescope(tol=DEFAULT_TOLERANCE, prec: Precision = DEFAULT_PRECISION,
                          *, max_outer=MAX_OUTER_TERMS) -> SumReport:
    """Euler's constant as sum_{n>=0} [psi(2^{n+1}) - psi(2^n) - ln 2].

    Also sums the half-integer form (1/2) sum [psi(2^n + 1/2) - psi(2^n)] and
    raises :class:`CrossCheckMismatch` if the two disagree.
    """
    tol = as_tolerance(tol)
    ctx = prec.context()
    ln2 = ctx.ln(2)

    def psi(x):
        return ctx.convert(digamma_ref(x, prec))

    def doubling(n):
        x = ctx.ldexp(1, n)
        return psi(2 * x) - psi(x) - ln2

    def half_integer(n):
        x = ctx.ldexp(1, n)
        return (psi(x + ctx.mpf(1) / 2) - psi(x)) / 2

    main = _digamma_terms(ctx, prec, tol, doubling, max_outer)
    alt = _digamma_terms(ctx, prec, tol, half_integer, max_outer)
    if abs(main.value - alt.value) > main.error_bound + alt.error_bound:
        raise CrossCheckMismatch("the two digamma telescopes for Euler's constant disagree")
    return main


def gamma0_telescope(a, tol=DEFAULT_TOLERANCE, prec: Precision = DEFAULT_PRECISION,
                     *, max_outer=MAX_OUTER_TERMS) -> SumReport:
    """gamma_0(a) = -psi(a) as -ln a + sum_{n>=0} [psi(a 2^{n+1}) - psi(a 2^n) - ln 2]."""
    tol = as_tolerance(tol)
    ctx = prec.context()
    a_v = _parameter(ctx, a)
    ln2 = ctx.ln(2)

    def term(n):
        x = ctx.ldexp(a_v, n)
        return ctx.convert(digamma_ref(2 * x, prec)) - ctx.convert(digamma_ref(x, prec)) - ln2

    rep = _digamma_terms(ctx, prec, tol, term, max_outer)
    return rep.shifted(-ctx.ln(a_v), 4 * ctx.eps)


def stieltjes(query: StieltjesQuery, tol=DEFAULT_TOLERANCE,
              prec: Precision = DEFAULT_PRECISION, **kwargs) -> StieltjesValue:
    """Dispatch a :class:`StieltjesQuery` to the matching route."""
    if query.method is Method.DYADIC:
        return stieltjes_dyadic(query.ell, query.a, tol, prec, **kwargs)
    if query.method is Method.BASE_K:
        return stieltjes_base_k(query.ell, query.a, query.k, tol, prec, **kwargs)
    return StieltjesValue(query, gamma0_telescope(query.a, tol, prec, **kwargs))
