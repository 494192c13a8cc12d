"""
Euler's constant by four routes
===============================

gamma = gamma_0(1) is reachable through the dyadic double series, the base-k
family, a digamma telescope, and Brun's series at s = 1. Each result carries
its own error bound; the last column is the distance to the digamma oracle.
"""

from mpmath import nstr

from zetaseries import (brun_beta, digamma_ref, euler_gamma_telescope,
                        stieltjes_base_k, stieltjes_dyadic)

reference = -digamma_ref(1)
beta = brun_beta(1)

routes = [
    ("dyadic series", stieltjes_dyadic(0, 1).report),
    ("base-3 series", stieltjes_base_k(0, 1, k=3).report),
    ("digamma telescope", euler_gamma_telescope()),
    # gamma = 1 - beta(1)
    ("1 - beta(1)", beta.shifted(1 - 2 * beta.value)),
]

for name, rep in routes:
    print(f"{name:18s} {nstr(rep.value, 20):22s} bound {nstr(rep.error_bound, 2):8s}"
          f" |err| {nstr(abs(rep.value - reference), 2)}")
