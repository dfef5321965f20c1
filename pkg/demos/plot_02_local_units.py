"""
Local units in rings without a unit
===================================

A ring with no identity can still act as if it had one on a finite piece
of a module.  We look for such local units, grow them one element at a
time, and watch a nilpotent ring fail.
"""

import numpy as np

from nonunital import library
from nonunital.algebras import ModuleOver, RingOver
from nonunital.errors import Infeasible
from nonunital.local_units import build_local_unit, combine_units, find_local_unit

# row matrices [[a, b], [0, 0]]: e11 is a left unit but there is no right unit
row = library.row_ring(2)
left = ModuleOver.regular(row, "left")
right = ModuleOver.regular(row, "right")
print("left unit on the whole ring:", find_local_unit(row, left, np.eye(2, dtype=int)).element.tolist())
try:
    find_local_unit(row, right, np.eye(2, dtype=int))
except Infeasible as exc:
    print("right unit:", exc)

# units for two pieces combine into a unit for both
M = RingOver.from_algebra(library.m2(2))
e11, e22 = np.array([1, 0, 0, 0]), np.array([0, 0, 0, 1])
print("e11 + e22 - e11 e22 =", combine_units(M, e11, e22).tolist())

# the constructive search backtracks over the singleton choices
cert = build_local_unit(M, ModuleOver.regular(M, "right"), [[1, 1, 0, 0], [0, 0, 1, 0]])
print("constructed unit:", cert.element.tolist(), "valid:", cert.check().ok)

# a nilpotent ring never has one: x . x = 0
N = library.nilpotent(2)
try:
    find_local_unit(N, ModuleOver.regular(N, "right"), [[1, 0]])
except Infeasible as exc:
    print("nilpotent ring:", exc)
