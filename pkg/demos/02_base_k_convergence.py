"""
How fast does the base-k family converge?
=========================================

The outer sum over n shrinks by a factor of about 1/k per step, so larger k
reaches a given tolerance in fewer outer terms (each term costs k inner
evaluations per group instead of 2). The printed ratio is the least-squares
slope of log|partial - final| against n, the same fit ``zetaseries bench``
reports.
"""

from mpmath import nstr

from zetaseries.cli import profile
from zetaseries.mpcore import Precision, Tolerance

tol = Tolerance("1e-15")
prec = Precision()

print(" k  outer terms  fitted ratio   1/k")
for k in (2, 3, 4, 6, 8):
    _, rows, ratio, outer = profile("base-k", 0, "1", k, tol, prec)
    print(f"{k:2d}  {outer:11d}  {ratio:12.5f}  {1 / k:.5f}")

# the first few partial sums at k = 4, next to their distance from the limit
_, rows, _, _ = profile("base-k", 0, "1", 4, tol, prec)
print()
for n, partial, err, inner in rows[:8]:
    print(f"n={n:2d}  {nstr(partial, 18):22s} |err| {nstr(err, 3):10s} inner terms {inner}")
