"""
Functional identities as a numerical test harness
=================================================

Four identities hold exactly for the Hurwitz zeta function; evaluated through
the double series their residuals measure the accumulated truncation error.
The second run adds a deliberate 1e-6 offset to show the harness catches it.
"""

from mpmath import nstr

from zetaseries import IdentityViolation, identity_suite

for r in identity_suite(tol="1e-10"):
    where = f"s={r.s}" + ("" if r.a is None else f", a={r.a}")
    print(f"{'ok ' if r.passed else 'BAD'} {r.name:10s} {where:16s} residual {nstr(r.value, 3)}")

try:
    identity_suite(["2"], ["1"], tol="1e-10", perturb="1e-6")
except IdentityViolation as exc:
    print(f"\nperturbed run rejected: {len(exc.offenders)} residuals above threshold")
