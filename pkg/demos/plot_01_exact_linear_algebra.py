"""
Exact linear algebra over a prime field
=======================================

Every search in the package comes down to a kernel or an affine solve
over F_p.  Here we row-reduce a small matrix, read off its kernel and
solution sets, and check them against plain enumeration.
"""

import numpy as np

from nonunital import exactla as la
from nonunital.oracle import brute_kernel

m = np.array([[1, 1, 0],
              [0, 1, 1]])
R, pivots = la.rref(m, 2)
print("rref:\n", R, "\npivots:", pivots)

# the kernel is a Subspace with a reduced basis
K = la.kernel(m, 2)
print("kernel basis:", K.basis.tolist())
print("agrees with enumeration:", {tuple(v) for v in K.elements()} == brute_kernel(m, 2))

# an affine solution set: particular solution plus the kernel
sol = la.solve_affine(m, [1, 0], 2)
print("lexicographically smallest solution:", sol.lex_min().tolist(), "of", sol.size(), "solutions")

# quotients come with a section on the non-pivot coordinates
q = la.quotient_with_section(3, la.Subspace.span([[1, 1, 1]], 3, 2))
print("quotient dim", q.dim, "projection of e0:", q.project([1, 0, 0]).tolist())

# over F_3 the same calls work unchanged
print("rank over F_3:", la.rank([[1, 2], [2, 1]], 3))
