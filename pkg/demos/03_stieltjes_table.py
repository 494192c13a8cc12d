"""
A small table of Stieltjes constants
====================================

gamma_ell(a) for a few ell and a from the dyadic series, checked against the
limit-formula oracle. For a = 1 these are the classical Stieltjes constants.
"""

from mpmath import nstr

from zetaseries import stieltjes_dyadic, stieltjes_ref

print(f"{'ell':>3} {'a':>4}  {'gamma_ell(a)':>26}  {'|series - oracle|':>18}")
for ell in range(5):
    for a in ("1/2", "1", "2"):
        v = stieltjes_dyadic(ell, a)
        gap = abs(v.value - stieltjes_ref(ell, a))
        print(f"{ell:3d} {a:>4}  {nstr(v.value, 22):>26}  {nstr(gap, 3):>18}")
