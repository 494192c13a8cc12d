"""Crude but independent reference values used only by the tests.

None of these touch zetaseries: direct sums with elementary remainder
bounds, exact rational arithmetic, and mpmath's own special functions as a
third opinion.
"""

from fractions import Fraction

import mpmath

CTX = mpmath.MPContext()
CTX.prec = 160


def direct_zeta(s, a, N=20000):
    """sum_{n>=0} (n+a)^-s as a direct sum plus the trapezoid-corrected tail.

    Returns (value, bound). For the convex decreasing f(x) = (x+a)^-s,
    sum_{n>=N} f(n) = int_N^inf f + f(N)/2 + R with 0 <= R <= |f'(N)|/8.
    """
    ctx = CTX
    s = ctx.mpf(s)
    a = Fraction(a)
    a = ctx.mpf(a.numerator) / a.denominator
    head = ctx.fsum((n + a) ** -s for n in range(N))
    X = N + a
    tail = X ** (1 - s) / (s - 1) + X**-s / 2
    bound = s * X ** (-s - 1) / 8
    return head + tail + bound / 2, bound / 2 + ctx.eps * N


def alternating_oracle(c, N=20000):
    """sum_{j>=0} (-1)^j c(j) for convex decreasing c via averaged partial sums.

    Returns (value, bound) with bound = |c(N) - c(N+1)| / 2.
    """
    ctx = CTX
    partial = ctx.fsum((-1) ** j * c(j) for j in range(N))
    nxt = partial + (-1) ** N * c(N)
    return (partial + nxt) / 2, abs(c(N) - c(N + 1)) / 2 + ctx.eps * N


def harmonic(n):
    return sum(Fraction(1, j) for j in range(1, n + 1))


def mp(x):
    return CTX.convert(x)


# frozen oracle values (stieltjes_ref at 256 bits, cross-checked against
# mpmath.stieltjes to 30 digits when they were recorded)
GAMMA = CTX.mpf("0.577215664901532860606512090082402431")
GAMMA1 = CTX.mpf("-0.0728158454836767248605863758749547")
GAMMA2 = CTX.mpf("-0.00969036319287231848453038603521")
CATALAN = CTX.mpf("0.915965594177219015054603514932384")
