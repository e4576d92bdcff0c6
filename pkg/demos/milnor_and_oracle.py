"""Milnor fibre eigenspaces from the Delta polynomials, cross-checked with
twisted cohomology computed on the Salvetti complex."""

from fractions import Fraction

from arrsheaf import catalog
from arrsheaf.localcohom import beta3, delta_polynomials, eigenspace_dims, eigenspace_dims_oracle
from arrsheaf.salvetti import face_structure, twisted_betti
from arrsheaf.localsys import LocalSystem

A = catalog.braid()
md = delta_polynomials(A)
print("mod-3 invariant:", beta3(A))
print("Delta1 =", md.delta1)
print("Delta2 =", md.delta2)

for k in range(1, A.r):
    s = Fraction(k, A.r)
    h1, h2 = eigenspace_dims(A, s, use_oracle=False)
    print(f"s = {s}: formulas ({h1.value}, {h2.value})  oracle {eigenspace_dims_oracle(A, s)}")

# The oracle itself: three lines in general position in the real plane.
T = catalog.triangle()
print("triangle faces (vertices, edges, chambers):", face_structure(T).counts)
for spec in ("0,0,0", "1/2,1/2,0", "1/3,1/3,1/3"):
    print(f"  twisted Betti numbers for {spec}:", twisted_betti(T, LocalSystem.parse(spec)))
