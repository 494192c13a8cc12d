"""
Hurwitz zeta, Brun's series and Dirichlet L-values
==================================================

zeta(s, a) from the dyadic double series, its a = 1 special case written
through Brun's beta(s), and L(s, chi) assembled from Hurwitz values at the
rationals k/m.
"""

from mpmath import nstr

from zetaseries import (DirichletCharacter, brun_zeta, dirichlet_l, hurwitz_zeta_ref,
                        hurwitz_zeta_series)

for s, a in (("2", "1"), ("2", "1/2"), ("3", "1"), ("1.5", "1/4")):
    z = hurwitz_zeta_series(s, a)
    print(f"zeta({s}, {a}) = {nstr(z.value, 20)}  (oracle gap {nstr(abs(z.value - hurwitz_zeta_ref(s, a)), 2)})")

for s in ("1.25", "2", "3"):
    print(f"via Brun, zeta({s}) = {nstr(brun_zeta(s).value, 20)}")

catalan = dirichlet_l(2, DirichletCharacter.parse(4, "1,0,-1,0"))
print(f"L(2, chi_4) = {nstr(catalan.value, 20)}  (Catalan's constant)")
odd = dirichlet_l(2, DirichletCharacter.principal(2))
print(f"L(2, chi_0 mod 2) = {nstr(odd.value, 20)}  (pi^2/8)")
legendre5 = DirichletCharacter(5, (1, -1, -1, 1, 0))
print(f"L(3, (./5)) = {nstr(dirichlet_l(3, legendre5).value, 20)}")
