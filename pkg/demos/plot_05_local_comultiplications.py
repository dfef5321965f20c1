"""
Combining and restricting comultiplications
===========================================

Two coassociative comultiplications that coassociate with each other can
be merged so that the counit law holds on both of their sets.  An
idempotent one cuts the coring down to a summand with a genuine counit.
"""

import numpy as np

from nonunital.algebras import Bimodule
from nonunital.corings import PreCoring
from nonunital.errors import AxiomError
from nonunital.local_costructure import (
    check_eps_comult,
    combine_right_comults,
    is_coassociative,
    projection,
    strong_restriction,
    transfer_comult,
)


def prefix(i):
    """x -> e_i (x) x on k^2."""
    D = np.zeros((4, 2), dtype=int)
    for x in range(2):
        D[i * 2 + x, x] = 1
    return D


c = PreCoring(Bimodule.vector_space(2, 2), np.zeros((4, 2), dtype=int), np.array([[0, 1]]))
D, Dp = prefix(1), prefix(0)
print("projection of D:", projection(c, D).tolist())

merged = combine_right_comults(c, D, Dp)
print("merged is coassociative:", is_coassociative(c, merged))
try:
    combine_right_comults(c, D, Dp, literal=True)
except AxiomError as exc:
    print("cross term D' o psi instead:", exc)

cert = check_eps_comult(c, D, [[0, 1]])
print("idempotent certificate:", cert.idempotent)
r = strong_restriction(cert)
print("summand of dim", r.subspace.dim, r.report)

print(transfer_comult(cert).report)
