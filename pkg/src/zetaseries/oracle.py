"""Reference values by classical non-series methods.

Euler-Maclaurin for the Hurwitz zeta function, recurrence plus asymptotic
expansion for the digamma function, and the limit formula for the Stieltjes
constants. Nothing here touches :mod:`zetaseries.mpcore`; Bernoulli numbers
are generated as exact rationals and derivatives come from truncated power
series, so agreement with the double series is an independent check.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import DomainError, PolePassed
from .mpcore.precision import DEFAULT_PRECISION, Precision, to_mpf

_BERNOULLI = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number ``B_n`` (with ``B_1 = -1/2``)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n < len(_BERNOULLI):
        return _BERNOULLI[n]
    with _BERNOULLI_LOCK:
        table = list(_BERNOULLI)
        for m in range(len(table), n + 1):
            if m > 1 and m % 2:
                table.append(Fraction(0))
                continue
            acc = sum(comb(m + 1, j) * table[j] for j in range(m))
            table.append(-acc / (m + 1))
        if len(table) > len(_BERNOULLI):
            _BERNOULLI[:] = table
    return _BERNOULLI[n]


@dataclass(frozen=True)
class EMConfig:
    """Euler-Maclaurin settings: ``shift`` terms summed directly, then
    ``bernoulli_terms`` correction terms."""

    shift: int = 64
    bernoulli_terms: int = 30

    def __post_init__(self):
        if self.shift < 10:
            raise ValueError("shift must be >= 10")
        if not 2 <= self.bernoulli_terms <= 30:
            raise ValueError("bernoulli_terms must lie in [2, 30]")


DEFAULT_EM = EMConfig()


def _frac(ctx, q: Fraction):
    return ctx.mpf(q.numerator) / q.denominator


def _positive(ctx, x, name):
    value = to_mpf(ctx, x)
    if value <= 0:
        raise DomainError(f"{name} must be positive, got {x!r}")
    return value


def digamma_ref(x, prec: Precision = DEFAULT_PRECISION, *, error=False):
    """psi(x) for real x > 0.

    Shifts x upward with psi(x) = psi(x+1) - 1/x until it passes a threshold
    that grows with the precision, then uses
    ln X - 1/(2X) - sum B_{2m} / (2m X^{2m}).
    """
    ctx = prec.context()
    x = _positive(ctx, x, "x")
    threshold = int(0.12 * prec.bits) + 12
    shift = max(0, int(math.ceil(threshold - float(x))))
    recip = ctx.fsum(1 / (x + i) for i in range(shift))
    X = x + shift
    target = ctx.ldexp(1, -prec.bits - 8)
    inv_x2 = 1 / (X * X)
    power = inv_x2
    terms = []
    last = None
    m = 1
    while True:
        term = _frac(ctx, bernoulli(2 * m)) / (2 * m) * power
        if last is not None and abs(term) > abs(last):
            raise ArithmeticError("digamma asymptotic series diverged before converging")
        terms.append(term)
        if abs(term) < target:
            break
        last = term
        power *= inv_x2
        m += 1
    value = ctx.ln(X) - 1 / (2 * X) - ctx.fsum(terms) - recip
    if error:
        return value, abs(terms[-1]) + (shift + len(terms) + 4) * ctx.eps * (abs(value) + 1)
    return value


def hurwitz_zeta_ref(s, a, cfg: EMConfig = DEFAULT_EM,
                     prec: Precision = DEFAULT_PRECISION, *, error=False):
    """zeta(s, a) by Euler-Maclaurin; continues analytically for s > 1 - 2M.

    The error estimate returned with ``error=True`` is the magnitude of the
    first omitted correction term.
    """
    ctx = prec.context()
    s = to_mpf(ctx, s)
    a = _positive(ctx, a, "a")
    if s == 1:
        raise PolePassed("zeta(s, a) has a pole at s = 1")
    M = cfg.bernoulli_terms
    if s <= 1 - 2 * M:
        raise DomainError(f"s = {s} needs more than {M} Bernoulli terms")
    N = cfg.shift
    head = ctx.fsum(ctx.power(n + a, -s) for n in range(N))
    X = N + a
    Xs = ctx.power(X, -s)
    integral = X * Xs / (s - 1)
    value = head + integral + Xs / 2
    rising = s            # (s)_{2r-1}
    xpow = Xs / X         # X^{-s-2r+1}
    corr = []
    for r in range(1, M + 2):
        c = _frac(ctx, bernoulli(2 * r) / math.factorial(2 * r)) * rising * xpow
        if r <= M:
            corr.append(c)
        else:
            omitted = abs(c)
        rising *= (s + 2 * r - 1) * (s + 2 * r)
        xpow /= X * X
    value += ctx.fsum(corr)
    if error:
        # for s < 0 the summed terms dwarf the result
        scale = abs(value) + abs(head) + abs(integral)
        return value, omitted + (N + M) * ctx.eps * scale * 4
    return value


def _series_mul(ctx, p, q, order):
    out = [ctx.zero] * (order + 1)
    for i, pi in enumerate(p):
        if pi == 0:
            continue
        for j in range(min(len(q), order + 1 - i)):
            out[i + j] += pi * q[j]
    return out


def _logpower_taylor(ctx, ell, X, order):
    """Derivatives ``f^(p)(X)``, ``p <= order``, of ``f(x) = ln(x)^ell / x``.

    Expands ``f(X(1+v)) = (ln X + ln(1+v))^ell / (X (1+v))`` in powers of v.
    """
    log1p = [ctx.ln(X)] + [ctx.mpf((-1) ** (i + 1)) / i for i in range(1, order + 1)]
    acc = [ctx.one] + [ctx.zero] * order
    for _ in range(ell):
        acc = _series_mul(ctx, acc, log1p, order)
    geom = [ctx.mpf((-1) ** i) for i in range(order + 1)]
    coeffs = _series_mul(ctx, acc, geom, order)
    out = []
    scale = 1 / X
    for p, c in enumerate(coeffs):
        out.append(ctx.factorial(p) * c * scale)
        scale /= X
    return out


def stieltjes_ref(ell: int, a, prec: Precision = DEFAULT_PRECISION,
                  cfg: EMConfig = DEFAULT_EM, *, error=False):
    """gamma_ell(a) from the limit formula with an Euler-Maclaurin tail.

    gamma_ell(a) = sum_{n<N} f(n+a) - ln(X)^{ell+1}/(ell+1) + f(X)/2
                   - sum_r B_{2r}/(2r)! f^(2r-1)(X),   X = N + a,

    where ``f(x) = ln(x)^ell / x``. The error estimate is the first omitted
    correction term.
    """
    if not 0 <= int(ell) <= 20 or int(ell) != ell:
        raise DomainError(f"ell must be an integer in [0, 20], got {ell!r}")
    ell = int(ell)
    ctx = prec.context()
    a = _positive(ctx, a, "a")
    N, M = cfg.shift, cfg.bernoulli_terms

    def f(x):
        return ctx.ln(x) ** ell / x

    head = ctx.fsum(f(n + a) for n in range(N))
    X = N + a
    derivs = _logpower_taylor(ctx, ell, X, 2 * M + 1)
    corr = ctx.fsum(_frac(ctx, bernoulli(2 * r) / math.factorial(2 * r)) * derivs[2 * r - 1]
                    for r in range(1, M + 1))
    value = head - ctx.ln(X) ** (ell + 1) / (ell + 1) + derivs[0] / 2 - corr
    if error:
        omitted = abs(_frac(ctx, bernoulli(2 * M + 2) / math.factorial(2 * M + 2))
                      * derivs[2 * M + 1])
        return value, omitted + (N + M) * ctx.eps * (abs(value) + abs(head)) * 4
    return value
