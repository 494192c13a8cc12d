"""Summation primitives: compensated accumulation, alternating inner sums
and the geometric outer loop used by every double series in the package.

All routines work inside one caller-supplied :class:`mpmath.MPContext` and
reduce strictly in ascending index order, so results are bit-reproducible.
"""

from __future__ import annotations

import math
from typing import Callable, Optional, Tuple

from ..errors import InvalidSequence, NonConvergence
from .precision import DEFAULT_PRECISION, Precision, SumReport, Tolerance, to_mpf

MAX_INNER_TERMS = 10**6
MAX_OUTER_TERMS = 200
RATIO_CAP = 0.9
TAIL_SAFETY = 2

TailFn = Callable[[int], Tuple[object, object]]


class Accumulator:
    """Running sum with Neumaier compensation.

    ``abs_total`` tracks the sum of magnitudes added, which callers use to
    bound the accumulated rounding error.
    """

    def __init__(self, ctx):
        self.ctx = ctx
        self._s = ctx.zero
        self._c = ctx.zero
        self.abs_total = ctx.zero

    def add(self, x):
        s = self._s
        t = s + x
        if abs(s) >= abs(x):
            self._c += (s - t) + x
        else:
            self._c += (x - t) + s
        self._s = t
        self.abs_total += abs(x)

    @property
    def value(self):
        return self._s + self._c

    def rounding_bound(self):
        return 8 * self.ctx.eps * self.abs_total


def _tol_value(ctx, tol):
    if isinstance(tol, Tolerance):
        return tol.mpf(ctx)
    value = to_mpf(ctx, tol)
    if value <= 0:
        raise ValueError("tolerance must be positive")
    return value


def _same_sign(x, y):
    return (x > 0 and y > 0) or (x < 0 and y < 0)


class _DirectSum:
    """Partial sums of ``term(start) + term(start+1) + ...`` taken two at a time."""

    def __init__(self, ctx, term, start, monotone_from=0, check_alternation=False):
        self.ctx = ctx
        self.term = term
        self.next = start
        self.monotone_from = monotone_from
        self.check = check_alternation
        self.acc = Accumulator(ctx)
        self.count = 0
        self._prev = None

    def fetch(self, j):
        t = self.ctx.convert(self.term(j))
        self.count += 1
        if self.check and j - 1 >= self.monotone_from and self._prev is not None:
            if _same_sign(self._prev, t):
                raise InvalidSequence(f"terms {j - 1} and {j} share a sign")
        self._prev = t
        return t

    def extend_to(self, stop):
        while self.next < stop:
            t1 = self.fetch(self.next)
            if self.next + 1 < stop:
                t2 = self.fetch(self.next + 1)
                self.acc.add(t1 + t2)
                self.next += 2
            else:
                self.acc.add(t1)
                self.next += 1

    @property
    def value(self):
        return self.acc.value


def sum_with_tail(term, tol, tail: TailFn, *, start=1, first_tail=None,
                  prec: Precision = DEFAULT_PRECISION, ctx=None,
                  max_terms=MAX_INNER_TERMS, monotone_from=None) -> SumReport:
    """Sum ``term(j)`` for ``j >= start`` as a direct partial sum plus a tail.

    ``tail(J)`` must return ``(value, bound)`` for ``sum_{j >= J} term(j)``.
    The cut ``J`` starts at ``first_tail`` and doubles until the tail bound,
    plus rounding, meets ``tol``. When ``monotone_from`` is given the directly
    summed terms are also checked for strict alternation from that index on.
    """
    ctx = ctx or prec.context()
    tol_v = _tol_value(ctx, tol)
    J = max(start, first_tail if first_tail is not None else start)
    direct = _DirectSum(ctx, term, start,
                        monotone_from=monotone_from or 0,
                        check_alternation=monotone_from is not None)
    while True:
        if J - start > max_terms:
            raise NonConvergence(f"inner sum needs more than {max_terms} terms")
        direct.extend_to(J)
        tv, tb = tail(J)
        rounding = direct.acc.rounding_bound() + 8 * ctx.eps * abs(tv)
        if tb + rounding <= tol_v:
            return SumReport(value=direct.value + tv, error_bound=tb + rounding,
                             outer_terms=0, inner_terms_total=direct.count)
        J = max(2 * J, J + 2)


def _euler_tail(ctx, fetch, J, tol_v, p_max):
    """Euler-transform ``sum_{i>=0} term(J+i)`` of an alternating sequence.

    Writes ``term(J+i) = (-1)^i c_i`` and returns ``(value, bound, samples)``
    where ``bound = |Delta^P c_0| / 2^P``; that bound holds when ``c`` is a
    completely monotone sequence. Returns None when the sign pattern of the
    differences rules that out or ``p_max`` is reached first.
    """
    diag = []
    value = ctx.zero
    c0 = None
    cmax = ctx.zero
    for m in range(p_max + 1):
        s = fetch(J + m)
        c = s if m % 2 == 0 else -s
        if c0 is None:
            c0 = c
        cmax = max(cmax, abs(c))
        new = [c]
        for p in range(1, m + 1):
            new.append(new[p - 1] - diag[p - 1])
        diag = new
        delta = diag[m]
        noise = (m + 1) * ctx.ldexp(ctx.eps, m + 2) * cmax
        signed = delta if m % 2 == 0 else -delta
        if abs(delta) > noise and c0 != 0 and not _same_sign(signed, c0):
            return None
        bound = ctx.ldexp(abs(delta) + noise, -m) + 4 * (m + 1) * ctx.eps * cmax
        if bound <= tol_v:
            return value, bound, m + 1
        value += ctx.ldexp(signed, -(m + 1))
    return None


def sum_alternating(term, tol, monotone_from=0, *, start=1,
                    tail: Optional[TailFn] = None, tail_from=None,
                    accelerate=True, prec: Precision = DEFAULT_PRECISION,
                    ctx=None, max_terms=MAX_INNER_TERMS) -> SumReport:
    """Sum a strictly alternating series ``term(start) + term(start+1) + ...``.

    Terms are summed in consecutive pairs before accumulation. Three ways of
    closing the sum are supported:

    * ``tail`` given: an analytic tail ``(value, bound)`` for the terms from a
      cut onward (used by the lattice sums, whose remainder is bounded by
      Euler-Maclaurin). ``monotone_from`` then only governs the sign check.
    * ``accelerate=True`` (default for black-box terms): direct terms up to a
      cut ``J >= monotone_from`` followed by an Euler transform of the tail.
    * ``accelerate=False``: the plain partial sum ``S_J`` stopped at the first
      ``J >= monotone_from`` with ``|term(J+1)| <= tol``; ``error_bound`` is
      exactly ``|term(J+1)|`` plus rounding.

    Raises :class:`InvalidSequence` if two consecutive terms at or beyond
    ``monotone_from`` share a sign, and :class:`NonConvergence` once more than
    ``max_terms`` terms would be needed.
    """
    ctx = ctx or prec.context()
    tol_v = _tol_value(ctx, tol)

    if tail is not None:
        return sum_with_tail(term, tol_v, tail, start=start, first_tail=tail_from,
                             ctx=ctx, max_terms=max_terms,
                             monotone_from=monotone_from)

    direct = _DirectSum(ctx, term, start, monotone_from, check_alternation=True)

    if not accelerate:
        J = start - 1
        pending = None
        while True:
            t_next = direct.fetch(J + 1)
            if J >= monotone_from and abs(t_next) <= tol_v:
                break
            if J + 1 - start >= max_terms:
                raise NonConvergence(
                    f"alternating sum not within {float(tol_v):g} after {max_terms} terms")
            if pending is None:
                pending = t_next
            else:
                direct.acc.add(pending + t_next)
                pending = None
            J += 1
        if pending is not None:
            direct.acc.add(pending)
        bound = abs(t_next) + direct.acc.rounding_bound()
        return SumReport(value=direct.value, error_bound=bound,
                         inner_terms_total=direct.count)

    p_max = min(ctx.prec // 2, 160)
    J = max(start, monotone_from)
    while True:
        if J - start > max_terms:
            raise NonConvergence(f"alternating sum needs more than {max_terms} terms")
        direct.extend_to(J)
        budget = tol_v - direct.acc.rounding_bound()
        samples = {}

        def fetch(j, _samples=samples):
            t = ctx.convert(term(j))
            _samples[j] = t
            return t

        result = _euler_tail(ctx, fetch, J, budget, p_max) if budget > 0 else None
        direct.count += len(samples)
        if result is not None:
            # the sampled tail terms must alternate too
            keys = sorted(samples)
            for j0, j1 in zip(keys, keys[1:]):
                if _same_sign(samples[j0], samples[j1]):
                    raise InvalidSequence(f"terms {j0} and {j1} share a sign")
            value, bound, _ = result
            return SumReport(value=direct.value + value,
                             error_bound=bound + direct.acc.rounding_bound(),
                             inner_terms_total=direct.count)
        J = max(2 * J, J + 16)


def sum_geometric_outer(outer_term: Callable[[int], SumReport], tol, *, start=0,
                        prec: Precision = DEFAULT_PRECISION, ctx=None,
                        max_outer=MAX_OUTER_TERMS, ratio_cap=RATIO_CAP,
                        tail_safety=TAIL_SAFETY, record_history=False) -> SumReport:
    """Sum outer terms ``T_n = outer_term(n).value`` for ``n = start, start+1, ...``.

    Stops once at least three terms are in and the estimated tail
    ``tail_safety * |T_N| r / (1 - r)`` drops below ``tol / 2``, where ``r``
    is the largest ratio ``|T_{n+1} / T_n|`` among the last three terms,
    capped at ``ratio_cap``. The reported bound is the sum of the inner
    bounds, that tail estimate and accumulated rounding. The outer tail is an
    empirical estimate, not a proof; ``tail_safety`` covers the slow drift of
    the ratio toward its limit.
    """
    ctx = ctx or prec.context()
    tol_v = _tol_value(ctx, tol)
    half = tol_v / 2
    acc = Accumulator(ctx)
    mags = []
    inner_bound = ctx.zero
    inner_terms = 0
    history = []
    ratio = math.nan
    tail_est = None
    n = start
    while True:
        if n - start >= max_outer:
            raise NonConvergence(
                f"outer sum not converged after {max_outer} terms "
                f"(observed ratio {ratio:.3g})")
        rep = outer_term(n)
        acc.add(rep.value)
        inner_bound += rep.error_bound
        inner_terms += rep.inner_terms_total
        mags.append(abs(rep.value))
        if record_history:
            history.append((n, acc.value, inner_terms))
        n += 1
        if len(mags) < 3:
            continue
        ratios = []
        for prev, cur in zip(mags[-3:], mags[-2:]):
            if cur == 0:
                ratios.append(0.0)
            elif prev == 0:
                ratios.append(math.inf)
            else:
                ratios.append(float(cur / prev))
        ratio = max(ratios)
        r_hat = ctx.mpf(min(ratio, ratio_cap))
        tail_est = tail_safety * mags[-1] * r_hat / (1 - r_hat)
        if tail_est < half:
            break
    bound = inner_bound + tail_est + acc.rounding_bound()
    return SumReport(value=acc.value, error_bound=bound, outer_terms=len(mags),
                     inner_terms_total=inner_terms, decay_ratio=ratio,
                     history=tuple(history))


def inner_tolerance(ctx, tol, max_outer=MAX_OUTER_TERMS):
    """Per-outer-term share of the error budget: half of ``tol`` over the cap."""
    return _tol_value(ctx, tol) / (2 * max_outer)
