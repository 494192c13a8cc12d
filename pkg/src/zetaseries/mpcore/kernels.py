"""Log-power kernels and Euler-Maclaurin tails for periodically weighted
lattice sums.

Every inner sum in the package has the shape

    sum_i w(i mod k) * scale * g(x0 + i*step),   g(x) = ln(x)**ell * x**(-sigma),

with weights ``w(0) = 1/k - 1`` and ``w(m) = 1/k`` otherwise (mean zero);
``k = 2`` is the plain alternating sum. Splitting the weights as
``1/k * sum_i - sum_{i = 0 mod k}`` and applying Euler-Maclaurin to both
pieces from the same cut, the divergent integrals cancel and what remains is
a short expansion in odd derivatives of ``g`` with an explicit remainder.
"""

from __future__ import annotations

import math

from .precision import SumReport, to_mpf
from .summation import sum_alternating, sum_with_tail

EM_ORDER = 16
MIN_EFFECTIVE_INDEX = 24


class LogPowerKernel:
    """``g(x) = ln(x)**ell * x**(-sigma)`` for ``x > 0`` and ``sigma > 0``.

    Derivatives are kept in the closed form
    ``g^(p)(x) = x**(-sigma-p) * sum_i q[p][i] * ln(x)**i``, with
    ``q[p+1][i] = -(sigma+p) q[p][i] + (i+1) q[p][i+1]``.
    """

    def __init__(self, ctx, ell: int, sigma):
        if ell < 0:
            raise ValueError("ell must be nonnegative")
        self.ctx = ctx
        self.ell = int(ell)
        self.sigma = to_mpf(ctx, sigma)
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        self._int_sigma = int(self.sigma) if self.sigma == int(self.sigma) else None
        self._q = [[ctx.zero] * self.ell + [ctx.one]]

    def power(self, x):
        """``x**(-sigma)``."""
        if self._int_sigma is not None:
            return 1 / x**self._int_sigma
        return self.ctx.power(x, -self.sigma)

    def __call__(self, x):
        if self.ell == 0:
            return self.power(x)
        return self.ctx.ln(x) ** self.ell * self.power(x)

    def coefficients(self, p: int):
        q = self._q
        while len(q) <= p:
            prev = q[-1]
            c = self.sigma + (len(q) - 1)
            nxt = [-c * prev[i] + (i + 1) * prev[i + 1] for i in range(self.ell)]
            nxt.append(-c * prev[self.ell])
            q.append(nxt)
        return q[p]

    def derivatives(self, x, order: int):
        """``[g(x), g'(x), ..., g^(order)(x)]``."""
        ctx = self.ctx
        L = ctx.ln(x)
        Lpow = [ctx.one]
        for _ in range(self.ell):
            Lpow.append(Lpow[-1] * L)
        base = self.power(x)
        inv = 1 / x
        out = []
        for p in range(order + 1):
            q = self.coefficients(p)
            out.append(base * ctx.fsum(qi * li for qi, li in zip(q, Lpow)))
            base *= inv
        return out

    def sup_abs_derivative(self, p: int, x):
        """Upper bound on ``sup_{y >= x} |g^(p)(y)|``.

        With ``t = ln y`` each piece ``e^{-c t} |t|^i`` (``c = sigma + p``) is
        maximised separately over ``t >= ln x``.
        """
        ctx = self.ctx
        T = ctx.ln(x)
        c = self.sigma + p
        total = ctx.zero
        for i, qi in enumerate(self.coefficients(p)):
            if qi == 0:
                continue
            best = ctx.exp(-c * T) * abs(T) ** i
            peak = ctx.mpf(i) / c
            if i > 0 and peak > T:
                best = max(best, ctx.exp(-c * peak) * peak**i)
            total += abs(qi) * best
        return total

    def variation_bound(self, p: int, x):
        """Bound on the total variation of ``g^(p)`` over ``[x, inf)``.

        ``g^(p+1)`` is ``y**(-sigma-p-1)`` times a degree-``ell`` polynomial in
        ``ln y``, so ``g^(p)`` has at most ``ell + 1`` monotone pieces and
        tends to zero.
        """
        return (2 * self.ell + 1) * self.sup_abs_derivative(p, x)


def _em_weights(ctx, order):
    cache = getattr(ctx, "_zs_em_weights", None)
    if cache is None or len(cache) < order + 1:
        cache = [None] + [ctx.bernoulli(2 * r) / ctx.factorial(2 * r)
                          for r in range(1, order + 1)]
        ctx._zs_em_weights = cache
    return cache


def periodic_tail(kernel: LogPowerKernel, x0, step, k: int, start: int, scale,
                  order: int = EM_ORDER):
    """``sum_{i >= start} (1/k - [k divides i]) * scale * g(x0 + i*step)``.

    ``start`` must be a multiple of ``k``. Returns ``(value, bound)`` where
    ``bound`` is a rigorous bound on the Euler-Maclaurin remainder after
    ``order`` correction terms (rounding excluded).
    """
    if start % k:
        raise ValueError("start must be a multiple of k")
    ctx = kernel.ctx
    X = x0 + start * step
    p_top = 2 * order - 1
    d = kernel.derivatives(X, p_top)
    w = _em_weights(ctx, order)
    inv_k = ctx.one / k
    value = (inv_k - 1) / 2 * scale * d[0]
    step_pow = step
    kp = ctx.mpf(k)
    for r in range(1, order + 1):
        value += w[r] * (kp - inv_k) * scale * step_pow * d[2 * r - 1]
        step_pow *= step * step
        kp *= k * k
    # step_pow / step**2 = step**(2*order - 1); kp / k**2 = k**(2*order - 1)
    span = step_pow / (step * step)
    kmax = kp / (k * k)
    bound = abs(w[order]) * (inv_k + kmax) * abs(scale) * span \
        * kernel.variation_bound(p_top, X)
    return value, bound


def first_cut(x0, step, start=1, min_index=MIN_EFFECTIVE_INDEX):
    """Smallest sensible cut ``J >= start`` with ``x0/step + J >= min_index``."""
    offset = float(x0 / step)
    return max(start, int(math.ceil(min_index - offset)))


class PeriodicLattice:
    """Points ``x0 + i*step`` carrying ``scale * g`` with period-``k`` weights.

    Group ``j`` collects fine indices ``k*j .. k*j + k - 1``; ``group(j)``
    applies the weights ``(1/k - 1, 1/k, ..., 1/k)`` and ``tail(J)`` is the
    sum of all groups ``j >= J``.
    """

    def __init__(self, kernel: LogPowerKernel, x0, step, k: int, scale,
                 order: int = EM_ORDER):
        self.kernel = kernel
        self.ctx = kernel.ctx
        self.x0 = x0
        self.step = step
        self.k = k
        self.scale = scale
        self.order = order
        self._inv_k = self.ctx.one / k

    def phi(self, i):
        return self.scale * self.kernel(self.x0 + i * self.step)

    def group(self, j):
        base = self.k * j
        inner = self.ctx.fsum(self.phi(base + m) for m in range(1, self.k))
        return (self._inv_k - 1) * self.phi(base) + self._inv_k * inner

    def tail(self, J):
        return periodic_tail(self.kernel, self.x0, self.step, self.k, self.k * J,
                             self.scale, self.order)

    def first_group(self, start=1, min_index=MIN_EFFECTIVE_INDEX):
        return first_cut(self.x0, self.step * self.k, start, min_index)


def alternating_lattice_sum(kernel: LogPowerKernel, x0, step, scale, tol, *, ctx,
                            sign=1, monotone_from=0, order: int = EM_ORDER):
    """``sum_{j >= 1} sign * (-1)^j * scale * g(x0 + j*step)``.

    Direct terms are summed (in pairs) up to an even cut, the rest comes from
    :func:`periodic_tail` with ``k = 2``.
    """
    def term(j):
        t = scale * kernel(x0 + j * step)
        return t if (j % 2 == 0) == (sign > 0) else -t

    def tail(J):
        if J % 2:
            v, b = tail(J + 1)
            return term(J) + v, b
        v, b = periodic_tail(kernel, x0, step, 2, J, scale, order)
        return -2 * sign * v, 2 * b

    return sum_alternating(term, tol, monotone_from, start=1, tail=tail,
                           tail_from=first_cut(x0, step), ctx=ctx)


def split_lattice_sum(lattice: PeriodicLattice, tol) -> SumReport:
    """``-(1/k) sum_{m=1}^{k-1} phi(m) - sum_{j >= 1} group(j)``.

    The j = 0 group is split off: its ``phi(0)`` point is left to the caller
    and its interior points are returned with a minus sign.
    """
    ctx = lattice.ctx
    k = lattice.k
    boundary = ctx.fsum(lattice.phi(m) for m in range(1, k)) / k
    rep = sum_with_tail(lattice.group, tol, lattice.tail, start=1,
                        first_tail=lattice.first_group(1), ctx=ctx)
    return SumReport(value=-boundary - rep.value,
                     error_bound=rep.error_bound + 4 * ctx.eps * abs(boundary),
                     inner_terms_total=rep.inner_terms_total + k - 1)


def trapezoid_lattice_sum(lattice: PeriodicLattice, tol) -> SumReport:
    """``-sum_{j >= 0} { (1/k - 1)/2 [phi(kj) + phi(kj + k)] + (1/k) sum_m phi(kj + m) }``.

    Group by group as written, endpoints of each unit cell half-weighted.
    """
    ctx = lattice.ctx
    k = lattice.k
    inv_k = ctx.one / k
    half_w = (inv_k - 1) / 2

    def group(j):
        ends = lattice.phi(k * j) + lattice.phi(k * (j + 1))
        inner = ctx.fsum(lattice.phi(k * j + m) for m in range(1, k))
        return half_w * ends + inv_k * inner

    def tail(J):
        # endpoint weights telescope: groups j >= J carry phi(kJ) only once
        v, b = lattice.tail(J)
        return v - half_w * lattice.phi(k * J), b

    rep = sum_with_tail(group, tol, tail, start=0, first_tail=lattice.first_group(0),
                        ctx=ctx)
    return SumReport(value=-rep.value, error_bound=rep.error_bound,
                     inner_terms_total=rep.inner_terms_total)
