"""Walk through the intersection lattice of the braid arrangement and the
lengths of direct images for a few local systems."""

from fractions import Fraction

from arrsheaf import catalog
from arrsheaf.arrangement import dense_edges, intersection_poset, poincare_polynomial
from arrsheaf.length import constant_length, exact_length, is_length_one
from arrsheaf.localsys import LocalSystem

A = catalog.braid()
P = intersection_poset(A)
print("braid arrangement:", A.r, "planes in C^3")
print("edges:", len(P), " Poincare polynomial:", poincare_polynomial(A))
print("dense edges by dimension:", sorted(W.dim for W in dense_edges(A)))

# The constant sheaf splits into one factor per edge, weighted by |mu|.
print("constant-sheaf length:", constant_length(A))

# Equal monodromy exp(2 pi i s) on every plane.
for s in ("1/5", "1/2", "1/3", "1/6"):
    L = LocalSystem.equal(A.r, Fraction(s))
    rep = exact_length(A, L)
    print(f"s = {s}: length {rep.exact}, length-one criterion {is_length_one(A, L)}")
    for f in rep.factors:
        where = "ambient" if not f.edge.support else f"edge {f.edge.id} (dim {f.edge.dim})"
        print(f"    {f.multiplicity} x IC on {where}")

# A plane with trivial monodromy triggers deletion-restriction.
cone = catalog.cone5()
L = LocalSystem.parse("0,1/2,1/2,1/2,1/2")
rep = exact_length(cone, L, all_orders=True)
print("five-plane cone: lower", rep.lower, "exact", rep.exact)
print("  first step:", rep.steps[0])
