import math
import threading
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from oracles import CTX, alternating_oracle, mp
from zetaseries.errors import InvalidSequence, NonConvergence
from zetaseries.mpcore.summation import _DirectSum
from zetaseries.mpcore import (Accumulator, LogPowerKernel, Precision, SumReport,
                               Tolerance, periodic_tail, sum_alternating,
                               sum_geometric_outer, to_mpf)
from zetaseries.oracle import digamma_ref, hurwitz_zeta_ref

PREC = Precision()


# -- precision and tolerance ------------------------------------------------

def test_precision_defaults():
    p = Precision()
    assert (p.bits, p.out_digits) == (256, 30)
    assert p.context().prec == 256


@pytest.mark.parametrize("bits,digits", [(63, 1), (128, 0), (100, 30), (131, 30)])
def test_precision_rejects(bits, digits):
    with pytest.raises(ValueError):
        Precision(bits, digits)


def test_precision_guard_bits_boundary():
    need = math.ceil(30 * math.log2(10)) + 32
    Precision(need, 30)
    with pytest.raises(ValueError):
        Precision(need - 1, 30)


def test_contexts_are_private():
    before = mpmath.mp.prec
    ctx = Precision(512, 10).context()
    assert ctx.prec == 512 and mpmath.mp.prec == before


def test_to_mpf_exact_inputs():
    ctx = PREC.context()
    assert to_mpf(ctx, "1/4") == ctx.mpf(1) / 4
    assert to_mpf(ctx, Fraction(1, 3)) == ctx.mpf(1) / 3
    # a float is taken at its binary value, a string at working precision
    assert to_mpf(ctx, 0.1) == ctx.mpf(Fraction(0.1).numerator) / Fraction(0.1).denominator
    assert to_mpf(ctx, "0.1") != to_mpf(ctx, 0.1)
    with pytest.raises(TypeError):
        to_mpf(ctx, True)


def test_tolerance():
    t = Tolerance("1e-12")
    assert t.abs_tol == Fraction(1, 10**12)
    assert t.scaled(Fraction(1, 4)).abs_tol == Fraction(1, 4 * 10**12)
    for bad in ("0", "-1e-3"):
        with pytest.raises(ValueError):
            Tolerance(bad)
    # not representable above rounding at 64 bits
    with pytest.raises(ValueError):
        Tolerance("1e-30").mpf(Precision(64, 1).context())


def test_sum_report_rejects_negative_bound():
    with pytest.raises(ValueError):
        SumReport(value=1, error_bound=-1)


# -- compensated accumulation ---------------------------------------------

@given(st.lists(st.floats(min_value=-1e12, max_value=1e12, allow_nan=False), max_size=60))
def test_accumulator_matches_exact_sum(xs):
    ctx = Precision(64, 1).context()
    acc = Accumulator(ctx)
    for x in xs:
        acc.add(ctx.mpf(x))
    exact = sum(Fraction(x) for x in xs)
    err = abs(_fraction(acc.value) - exact)
    assert err <= _fraction(acc.rounding_bound()) + Fraction(1, 10**300)


def _fraction(x):
    sign, man, exp, _ = x._mpf_
    return (-1) ** sign * Fraction(man) * Fraction(2) ** exp


# -- sum_alternating ------------------------------------------------------

def test_alternating_spec_digamma_example():
    ctx = PREC.context()
    rep = sum_alternating(lambda j: ctx.mpf((-1) ** j) / (j + 2), "1e-20", ctx=ctx)
    # sum_{j>=1} (-1)^j/(j+x) = (psi((x+1)/2) - psi((x+2)/2))/2 at x = 2
    ref = (digamma_ref("3/2") - digamma_ref(2)) / 2
    assert rep.error_bound <= 1e-20
    assert abs(rep.value - ref) <= rep.error_bound


def test_alternating_log2():
    ctx = PREC.context()
    rep = sum_alternating(lambda j: ctx.mpf((-1) ** j) / (j + 1), "1e-15", ctx=ctx)
    ref, ref_bound = alternating_oracle(lambda j: CTX.mpf(1) / (j + 2), N=200000)
    assert abs(mp(rep.value) - (-ref)) <= rep.error_bound + ref_bound
    assert abs(mp(rep.value) - (CTX.ln(2) - 1)) <= rep.error_bound


def test_alternating_zero_sequence():
    rep = sum_alternating(lambda j: 0, "1e-12")
    assert rep.value == 0 and rep.error_bound == 0


def test_alternating_plain_mode_uses_next_term_bound():
    ctx = PREC.context()
    rep = sum_alternating(lambda j: ctx.mpf((-1) ** j) / j**2, "1e-4", accelerate=False,
                          ctx=ctx)
    J = rep.inner_terms_total - 1
    assert abs(rep.error_bound - ctx.mpf(1) / (J + 1) ** 2) < 1e-60
    assert abs(rep.value - (-ctx.pi**2 / 12)) <= rep.error_bound


def test_alternating_rejects_same_sign():
    with pytest.raises(InvalidSequence):
        sum_alternating(lambda j: 1 / j**2 if j != 5 else -1 / 25, "1e-12", accelerate=False)
    with pytest.raises(InvalidSequence):
        sum_alternating(lambda j: 1.0 / j**2, "1e-12")


def test_alternating_sign_check_waits_for_onset():
    # two leading terms of the same sign are fine before monotone_from
    ctx = PREC.context()
    rep = sum_alternating(lambda j: ctx.one if j < 3 else ctx.mpf((-1) ** j) / j, "1e-12",
                          monotone_from=3, ctx=ctx)
    ref = ctx.mpf(5) / 2 - ctx.ln(2)
    assert abs(rep.value - ref) <= rep.error_bound


def test_alternating_term_cap():
    with pytest.raises(NonConvergence):
        sum_alternating(lambda j: (-1) ** j / math.log(j + 1), "1e-12", accelerate=False,
                        max_terms=1000)


@given(alpha=st.fractions(min_value=Fraction(1, 4), max_value=5, max_denominator=64),
       p=st.integers(min_value=1, max_value=4))
def test_alternating_hurwitz_eta(alpha, p):
    """sum_{j>=0} (-1)^j (j+alpha)^-p = 2^-p [zeta(p, alpha/2) - zeta(p, (alpha+1)/2)]."""
    ctx = PREC.context()
    al = to_mpf(ctx, alpha)
    rep = sum_alternating(lambda j: ctx.mpf((-1) ** j) / (j + al) ** p, "1e-25", start=0,
                          ctx=ctx)
    if p == 1:
        ref = (digamma_ref((alpha + 1) / 2) - digamma_ref(alpha / 2)) / 2
    else:
        ref = (hurwitz_zeta_ref(p, alpha / 2) - hurwitz_zeta_ref(p, (alpha + 1) / 2)) / 2**p
    assert rep.error_bound <= 1e-25
    assert abs(rep.value - ctx.convert(ref)) <= rep.error_bound + 1e-60


@given(x=st.fractions(min_value=Fraction(1, 8), max_value=10, max_denominator=32))
def test_alternating_refinement(x):
    """A 4x smaller tol moves the value by less than the first bound."""
    ctx = PREC.context()
    xv = to_mpf(ctx, x)

    def term(j):
        return ctx.mpf((-1) ** j) / (j + xv) ** 2

    first = sum_alternating(term, "1e-14", ctx=ctx)
    second = sum_alternating(term, "2.5e-15", ctx=ctx)
    assert abs(first.value - second.value) < first.error_bound


@given(x=st.fractions(min_value=Fraction(1, 8), max_value=10, max_denominator=32))
def test_pairing_invariance(x):
    """Pairwise accumulation equals the exactly rounded sum of the pairs."""
    bits = PREC.bits
    ctx = PREC.context()
    xv = to_mpf(ctx, x)

    def term(j):
        return ctx.mpf((-1) ** j) / (j + xv)

    n_pairs = 500
    direct = _DirectSum(ctx, term, 0)
    direct.extend_to(2 * n_pairs)
    paired = ctx.fsum(term(2 * i) + term(2 * i + 1) for i in range(n_pairs))
    assert abs(direct.value - paired) <= ctx.ldexp(abs(paired), -(bits - 8))


# -- outer loop -------------------------------------------------------------

def _const(v):
    return SumReport(value=v, error_bound=0)


def test_geometric_outer_examples():
    ctx = PREC.context()
    rep = sum_geometric_outer(lambda n: _const(ctx.ldexp(1, -n)), "1e-12", ctx=ctx)
    assert abs(rep.value - 2) <= rep.error_bound <= 1e-12
    assert abs(rep.decay_ratio - 0.5) < 1e-12
    zero = sum_geometric_outer(lambda n: _const(ctx.zero), "1e-12", ctx=ctx)
    assert zero.value == 0


def test_geometric_outer_non_convergence():
    ctx = PREC.context()
    with pytest.raises(NonConvergence):
        sum_geometric_outer(lambda n: _const(ctx.one / (n + 1)), "1e-12", ctx=ctx)


def test_geometric_outer_history():
    ctx = PREC.context()
    rep = sum_geometric_outer(lambda n: _const(ctx.ldexp(1, -n)), "1e-6", ctx=ctx,
                              record_history=True)
    assert [h[0] for h in rep.history] == list(range(rep.outer_terms))
    assert rep.history[-1][1] == rep.value


def test_outer_terms_of_zeta_decay_by_half():
    from zetaseries.zeta import hurwitz_zeta_series
    rep = hurwitz_zeta_series(2, 1, record_history=True)
    parts = [h[1] for h in rep.history]
    terms = [b - a for a, b in zip(parts, parts[1:])]
    assert abs(float(terms[-1] / terms[-2]) - 0.5) < 0.01


# -- kernels ---------------------------------------------------------------

@pytest.mark.parametrize("ell,sigma,x", [(0, 2, "1.5"), (2, 1, "3.25"), (3, "1.5", "0.75")])
def test_kernel_derivatives(ell, sigma, x):
    ctx = PREC.context()
    g = LogPowerKernel(ctx, ell, sigma)
    d = g.derivatives(to_mpf(ctx, x), 5)
    mpmath.mp.prec = 256
    try:
        f = lambda t: mpmath.log(t) ** ell * t ** -mpmath.mpf(sigma)  # noqa: E731
        for p in range(6):
            assert abs(d[p] - mpmath.diff(f, mpmath.mpf(x), p)) < 1e-40
    finally:
        mpmath.mp.prec = 53


@pytest.mark.parametrize("k,s,x0,step", [(2, 2, "1", "1/8"), (3, 3, "0.5", "1/27"),
                                         (5, "1.5", "2", "1/25")])
def test_periodic_tail_against_hurwitz(k, s, x0, step):
    """sum_{i>=I} (1/k - [k|i]) (x0+i h)^-s in terms of Hurwitz zeta values."""
    ctx = PREC.context()
    kern = LogPowerKernel(ctx, 0, s)
    I = 10 * k
    x0v, hv = to_mpf(ctx, x0), to_mpf(ctx, step)
    value, bound = periodic_tail(kern, x0v, hv, k, I, ctx.one)
    c = x0v / hv + I
    z = lambda a: ctx.convert(hurwitz_zeta_ref(s, a))  # noqa: E731
    ref = hv ** -to_mpf(ctx, s) * (z(c) / k - ctx.mpf(k) ** -to_mpf(ctx, s) * z(c / k))
    assert abs(value - ref) <= bound + 1e-60
    assert bound < 1e-20


def test_determinism_across_threads():
    from zetaseries.stieltjes import stieltjes_dyadic
    results = []

    def work():
        results.append(stieltjes_dyadic(1, "3/2").value)

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    serial = stieltjes_dyadic(1, "3/2").value
    assert all(r == serial for r in results)
