"""
Comatrix corings and adjoining a counit
=======================================

A finitely generated projective module produces a coring with counit.
A coring without counit can be given one by adjoining the base ring;
comodules and colinear maps carry over unchanged.
"""

import numpy as np

from nonunital import library
from nonunital.algebras import Bimodule
from nonunital.corings import (
    Comodule,
    PreCoring,
    check_coring,
    colinear_maps,
    comatrix_coring,
    dorroh_coring,
    dual_ring,
)

cm = comatrix_coring(library.row_vectors(2))
print("comatrix coring over M2: dim", cm.coring.dim)
print(check_coring(cm.coring, counital=True))

# the zero comultiplication on a line has no counit at all
z = PreCoring(Bimodule.vector_space(1, 2), np.zeros((1, 1), dtype=int), None)
d = dorroh_coring(z)
print("adjoined coring: Delta =", d.coring.delta.tolist(), "eps =", d.coring.epsilon.tolist())
print("counital now:", check_coring(d.coring, counital=True).ok)
print(d.check_coideal())

m = Comodule.regular(z)
mh = d.hat(m)
print("colinear maps before and after:", colinear_maps(m, m).dim, colinear_maps(mh, mh).dim)

# the convolution ring of the comatrix coring is unital
print("dual ring unit:", dual_ring(cm.coring).unit)
