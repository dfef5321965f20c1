import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonunital import exactla as la
from nonunital import library
from nonunital.algebras import Bimodule, check_ring_over, tensor
from nonunital.corings import (
    Comodule,
    PreCoring,
    check_coring,
    check_coring_morphism,
    colinear_maps,
    comatrix_coring,
    cotensor,
    dorroh_coring,
    dual_ring,
    grouplike_coring,
    is_cocommutative,
    trivial_coring,
)
from nonunital.errors import AxiomError
from nonunital.workbench.generate import random_precoring


def zero_coring(n=1):
    return PreCoring(Bimodule.vector_space(n, 2), np.zeros((n * n, n), dtype=np.int64), None, name="null")


def test_trivial_coring_passes():
    c = trivial_coring(library.field(2))
    assert check_coring(c).ok


def test_zero_comultiplication_has_no_counit():
    c = zero_coring()
    rep = check_coring(c.with_epsilon(np.array([[1]])))
    assert rep.checks["coassociative"]
    assert not rep.checks["right counit law"] and not rep.checks["left counit law"]


def test_grouplike_plane_passes():
    assert check_coring(grouplike_coring(2)).ok


def test_dual_rings():
    cr = dual_ring(trivial_coring(library.field(2)))
    assert cr.dim == 1 and cr.unit is not None
    g = dual_ring(grouplike_coring(2))
    # componentwise product on the two coordinate functionals
    assert g.dim == 2
    for i in range(2):
        for j in range(2):
            assert g.mul(np.eye(2, dtype=int)[i], np.eye(2, dtype=int)[j]).tolist() == \
                [int(i == j == 0), int(i == j == 1)]
    z = dual_ring(zero_coring(2))
    assert not z.ring.structure.any()


def test_cotensor_dimensions():
    c = grouplike_coring(2)
    right = Comodule.regular(c, "right", counital=True)
    left = Comodule.regular(c, "left", counital=True)
    assert cotensor(right, left).dim == c.dim
    V = Bimodule.vector_space(2, 2)
    r0 = Comodule(c, V, np.zeros((tensor(V, c.carrier).dim, 2), dtype=int), "right")
    l0 = Comodule(c, V, np.zeros((tensor(c.carrier, V).dim, 2), dtype=int), "left")
    assert cotensor(r0, l0).dim == 4
    Z = Bimodule.vector_space(0, 2)
    rz = Comodule(c, Z, np.zeros((0, 0), dtype=int), "right")
    assert cotensor(rz, left).dim == 0


@pytest.mark.parametrize("module, dim", [
    (library.field(2).regular, 1),
    (Bimodule.vector_space(2, 2), 4),
    (library.row_vectors(2), 4),
    (library.kxk(2).regular, 2),
])
def test_comatrix_corings(module, dim):
    cm = comatrix_coring(module)
    assert cm.coring.dim == dim
    assert check_coring(cm.coring, counital=True).ok
    assert cm.right_comodule.check().ok
    assert cm.left_comodule.check().ok
    cr = dual_ring(cm.coring)
    assert cr.unit is not None and check_ring_over(cr.ring).ok


def test_dorroh_of_zero_coring_frozen():
    d = dorroh_coring(zero_coring())
    assert d.coring.dim == 2
    # Delta(c, 0) = (0,1)(x)(c,0) + (c,0)(x)(0,1), Delta(0,1) = (0,1)(x)(0,1)
    assert d.coring.delta.tolist() == [[0, 0], [1, 0], [1, 0], [0, 1]]
    assert d.coring.epsilon.tolist() == [[0, 1]]
    assert check_coring(d.coring, counital=True).ok
    rep = d.check_coideal()
    assert rep.ok and rep.details["not a subcoring"]


def test_dorroh_of_counital_coring():
    g = grouplike_coring(2)
    d = dorroh_coring(g)
    assert d.coring.dim == 3
    assert check_coring(d.coring, counital=True).ok
    rep = check_coring_morphism(d.projection, d.coring, g)
    # pi respects comultiplications only: the new counit vanishes on C x 0
    assert rep.checks["bilinear"] and rep.checks["comultiplicative"]
    assert not rep.checks["counit preserving"]
    assert check_coring_morphism(d.inclusion, trivial_coring(g.A), d.coring).ok
    assert is_cocommutative(d.coring)


def test_dorroh_rejects_non_coassociative():
    # Delta(e0) = e1 (x) e1, Delta(e1) = e0 (x) e0
    bad = PreCoring(Bimodule.vector_space(2, 2), np.array([[0, 1], [0, 0], [0, 0], [1, 0]]), None)
    assert not check_coring(bad).checks["coassociative"]
    with pytest.raises(AxiomError):
        dorroh_coring(bad)


def test_hat_unhat_round_trip_on_grouplike_support():
    g = grouplike_coring(3, support=[0, 2])
    assert not check_coring(g, counital=True).ok
    d = dorroh_coring(g)
    m = Comodule.regular(g)
    mh = d.hat(m)
    assert mh.check().ok
    assert la.equal(d.unhat(mh).coaction, m.coaction, 2)
    assert colinear_maps(m, m).equals(colinear_maps(mh, mh))


@given(st.integers(0, 5000), st.integers(1, 3))
def test_dorroh_always_counital(seed, dim):
    c = random_precoring(np.random.default_rng(seed), dim, 2)
    d = dorroh_coring(c)
    assert check_coring(d.coring, counital=True).ok
    assert check_coring_morphism(d.projection, d.coring, c).checks["comultiplicative"]
    assert check_coring_morphism(d.inclusion, trivial_coring(c.A), d.coring).ok
    assert d.check_coideal().ok


@given(st.integers(0, 5000), st.integers(1, 3))
def test_dual_ring_associative(seed, dim):
    c = random_precoring(np.random.default_rng(seed), dim, 2)
    assert check_ring_over(dual_ring(c).ring).ok
