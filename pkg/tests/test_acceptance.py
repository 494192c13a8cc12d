"""Acceptance criteria 1-9, each at its stated tolerance.

Every test records one PASS/FAIL line; conftest prints them at the end of the
run. ``python3 tests/test_acceptance.py`` runs the same checks without pytest.
"""

import io
import subprocess
import sys
import time

import pytest

from oracles import CTX, GAMMA1, GAMMA2, alternating_oracle, mp
from zetaseries import cli
from zetaseries.oracle import digamma_ref, hurwitz_zeta_ref, stieltjes_ref
from zetaseries.stieltjes import (euler_gamma_telescope, stieltjes_base_k,
                                  stieltjes_base_k_trapezoid, stieltjes_dyadic)
from zetaseries.zeta import (DirichletCharacter, brun_beta, dirichlet_l,
                             hurwitz_zeta_series, identity_suite)

RESULTS = {}
BUDGET_S = 60

ELLS = range(6)
A_STIELTJES = ["1/2", "1", "3/2", "2"]
S_ZETA = ["1.25", "1.5", "2", "3", "5"]
A_ZETA = ["1/4", "1/2", "1", "2"]


def record(n, title, ok, detail, started):
    elapsed = time.perf_counter() - started
    ok = ok and elapsed <= BUDGET_S
    RESULTS[n] = f"{'PASS' if ok else 'FAIL'}  criterion {n}: {title} ({detail}; {elapsed:.1f} s)"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def test_criterion_1_euler_gamma_three_routes():
    t0 = time.perf_counter()
    ref = -mp(digamma_ref(1))
    routes = {
        "dyadic": mp(stieltjes_dyadic(0, 1).value),
        "telescope": mp(euler_gamma_telescope().value),
        "1-beta(1)": 1 - mp(brun_beta(1).value),
    }
    worst = max(abs(v - ref) for v in routes.values())
    record(1, "gamma via three routes", worst <= 1e-12, f"max error {CTX.nstr(worst, 3)}", t0)


def test_criterion_2_stieltjes_grid():
    t0 = time.perf_counter()
    worst = CTX.zero
    for ell in ELLS:
        for a in A_STIELTJES:
            worst = max(worst, abs(mp(stieltjes_dyadic(ell, a).value) - mp(stieltjes_ref(ell, a))))
    g1 = CTX.nstr(mp(stieltjes_dyadic(1, 1).value), 12)
    g2 = CTX.nstr(mp(stieltjes_dyadic(2, 1).value), 12)
    prefixes = g1.startswith("-0.07281584548") and g2.startswith("-0.00969036319")
    frozen = abs(mp(stieltjes_ref(1, 1)) - GAMMA1) < 1e-30 and abs(mp(stieltjes_ref(2, 1)) - GAMMA2) < 1e-30
    record(2, "Stieltjes grid vs limit-formula oracle", worst <= 1e-10 and prefixes and frozen,
           f"max error {CTX.nstr(worst, 3)}, gamma_1 = {g1}, gamma_2 = {g2}", t0)


def test_criterion_3_base_k_equivalence():
    t0 = time.perf_counter()
    cells = bad = 0
    for ell in ELLS:
        for a in A_STIELTJES:
            dy = stieltjes_dyadic(ell, a)
            for k in (2, 3, 5):
                b = stieltjes_base_k(ell, a, k)
                t = stieltjes_base_k_trapezoid(ell, a, k)
                cells += 1
                if abs(b.value - dy.value) > b.error_bound + dy.error_bound:
                    bad += 1
                elif abs(b.value - t.value) > b.error_bound + t.error_bound:
                    bad += 1
    record(3, "base-k equivalence, both forms", bad == 0, f"{cells - bad}/{cells} cells agree", t0)


def test_criterion_4_hurwitz_vs_oracle():
    t0 = time.perf_counter()
    worst = max(abs(mp(hurwitz_zeta_series(s, a).value) - mp(hurwitz_zeta_ref(s, a)))
                for s in S_ZETA for a in A_ZETA)
    record(4, "Hurwitz series vs Euler-Maclaurin", worst <= 1e-12,
           f"max error {CTX.nstr(worst, 3)}", t0)


def test_criterion_5_identity_suite():
    t0 = time.perf_counter()
    res = identity_suite(tol="1e-10", raise_on_violation=False)
    failed = [r for r in res if not r.passed]
    worst = max(abs(mp(r.value)) for r in res)
    record(5, "identity suite at tol 1e-10", not failed,
           f"{len(res) - len(failed)}/{len(res)} residuals pass, largest {CTX.nstr(worst, 3)}", t0)


def test_criterion_6_brun_equivalence():
    t0 = time.perf_counter()
    ok = True
    worst = CTX.zero
    for s in ("1.25", "2", "3"):
        b = brun_beta(s)
        z = hurwitz_zeta_series(s, 1)
        gap = abs(1 / (CTX.mpf(s) - 1) + 1 - mp(b.value) - mp(z.value))
        worst = max(worst, gap)
        ok &= gap <= mp(b.error_bound) + mp(z.error_bound) + 1e-40
    record(6, "Brun's series vs Hurwitz at a = 1", ok, f"max gap {CTX.nstr(worst, 3)}", t0)


def test_criterion_7_dirichlet_l():
    t0 = time.perf_counter()
    catalan, cb = alternating_oracle(lambda j: CTX.mpf(1) / (2 * j + 1) ** 2)
    odd, ob = alternating_oracle(lambda j: CTX.mpf(1) / (j + 1) ** 2)   # eta(2) = pi^2/12
    e1 = abs(mp(dirichlet_l(2, DirichletCharacter(4, (1, 0, -1, 0))).value) - catalan)
    # sum over odd n of n^-2 = zeta(2) - zeta(2)/4 = (3/2) eta(2)
    e2 = abs(mp(dirichlet_l(2, DirichletCharacter.principal(2)).value) - 3 * odd / 2)
    ok = e1 + cb <= 1e-10 and e2 + 3 * ob / 2 <= 1e-10
    record(7, "Dirichlet L: Catalan and principal mod 2", ok,
           f"errors {CTX.nstr(e1, 3)}, {CTX.nstr(e2, 3)}", t0)


def test_criterion_8_convergence_rate():
    t0 = time.perf_counter()
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(["bench", "--quantity", "stieltjes", "--ell", "0", "--a", "1",
                     "--k", "2,4", "--tol", "1e-12"], out=out, err=err)
    fits = {}
    for line in out.getvalue().splitlines():
        if line.startswith("# fitted_ratio"):
            kv = dict(p.split("=") for p in line.split()[2:])
            fits[int(kv["k"])] = (float(kv["ratio"]), int(kv["outer_terms"]))
    ok = code == 0 and all(abs(fits[k][0] - 1 / k) <= 0.1 for k in (2, 4))
    ok = ok and fits[4][1] < fits[2][1]
    record(8, "outer decay ratio ~ 1/k", ok,
           f"k=2: ratio {fits[2][0]:.4f} in {fits[2][1]} terms, "
           f"k=4: ratio {fits[4][0]:.4f} in {fits[4][1]} terms", t0)


def test_criterion_9_determinism():
    t0 = time.perf_counter()
    argv = [sys.executable, "-m", "zetaseries", "verify", "--grid", "full"]
    runs = [subprocess.run(argv, capture_output=True, check=False) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and runs[0].returncode == runs[1].returncode
    record(9, "verify --grid full is byte-identical", same and runs[0].returncode == 0,
           f"{len(runs[0].stdout)} bytes, exit {runs[0].returncode}", t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
