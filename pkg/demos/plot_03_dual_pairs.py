"""
Dual pairs, dual bases and the elementary ring
==============================================

A module together with a family of functionals gives a ring S without
unit.  Finding a dual basis for some vectors is the same problem as
finding a local unit of S for them; the panels below run both sides.
"""

from nonunital import exactla as la
from nonunital.algebras import Bimodule
from nonunital.dual_pairs import (
    DualPair,
    ElementaryRing,
    comatrix_context_panel,
    find_dual_basis,
    ground_units_panel,
)

plane = DualPair.canonical(Bimodule.vector_space(2, 2))
S = ElementaryRing(plane)
print("S has dimension", S.dim, "and unit", S.ring.find_unit())

cert = find_dual_basis(plane, la.identity(2))
for u, f in cert.pairs:
    print("  u =", u.tolist(), " f =", f.tolist())

print(comatrix_context_panel(plane))

# with the zero pairing nothing works, and every condition says so
zero = DualPair.zero(plane.M, plane.Mp)
rep = comatrix_context_panel(zero)
print("zero pairing, conditions:", set(rep.conditions.values()), "agreement:", rep.agreement)

print(ground_units_panel(plane, strong=True))
