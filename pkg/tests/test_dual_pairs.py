import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonunital import exactla as la
from nonunital import library
from nonunital.algebras import Bimodule
from nonunital.dual_pairs import (
    DualPair,
    ElementaryRing,
    adjunction_maps,
    anh_marki_check,
    base_units_panel,
    check_alpha_condition,
    comatrix_context_panel,
    dual_basis_feasible,
    enough_idempotents_check,
    find_dual_basis,
    ground_units_panel,
    two_sided_units_panel,
)
from nonunital.errors import Infeasible
from nonunital.oracle import brute_dual_bases
from nonunital.workbench import generate

PANELS = (ground_units_panel, base_units_panel, two_sided_units_panel)


@pytest.fixture
def plane():
    return DualPair.canonical(Bimodule.vector_space(2, 2))


@pytest.fixture
def zero_pair(plane):
    return DualPair.zero(plane.M, plane.Mp)


def line():
    return DualPair.canonical(library.field(2).regular)


def test_elementary_ring_of_the_line():
    S = ElementaryRing(line())
    assert S.dim == 1
    assert (S.Phi_matrix == 1).all() and (S.Psi_matrix == 1).all()


def test_elementary_ring_of_the_plane_is_m2(plane):
    S = ElementaryRing(plane)
    assert S.dim == 4
    assert la.rank(S.Phi_matrix, 2) == 4
    assert S.ring.find_unit() is not None
    assert S.ring.as_algebra().associativity_failure() is None


def test_zero_pairing_gives_zero_ring(zero_pair):
    S = ElementaryRing(zero_pair)
    assert not S.ring.structure.any()
    assert not S.Phi_matrix.any()


def test_adjunction_maps(plane, zero_pair):
    phi, psi = adjunction_maps(plane)
    assert (phi.matrix == np.eye(2)).all()
    assert psi.is_iso()
    phi0, psi0 = adjunction_maps(zero_pair)
    assert not phi0.matrix.any() and not psi0.matrix.any()


def test_dual_basis_of_the_line():
    cert = find_dual_basis(line(), [[1]])
    assert [(u.tolist(), f.tolist()) for u, f in cert.pairs] == [([1], [1])]


def test_standard_dual_basis_is_idempotent(plane):
    cert = find_dual_basis(plane, la.identity(2), require_idempotent=True)
    assert cert.check().ok
    S = ElementaryRing(plane)
    assert S.ring.is_idempotent(cert.element)
    assert [(u.tolist(), f.tolist()) for u, f in cert.pairs] == [([1, 0], [1, 0]), ([0, 1], [0, 1])]


def test_no_functionals_no_dual_basis():
    with pytest.raises(Infeasible):
        find_dual_basis(Bimodule.vector_space(2, 2), [[1, 0]], la.Subspace.zero(2, 2))


def test_alpha_condition_examples():
    k = library.field(2)
    assert check_alpha_condition(k.regular).ok
    V2 = Bimodule.vector_space(2, 2)
    rep = check_alpha_condition(V2, la.Subspace.zero(2, 2))
    assert not rep.checks["injective on test module 0 (k)"]
    rep = check_alpha_condition(V2)
    assert rep.ok and rep.agreement


def test_comatrix_context_examples(plane, zero_pair):
    assert all(comatrix_context_panel(plane).conditions.values())
    rep = comatrix_context_panel(zero_pair)
    assert not any(rep.conditions.values()) and rep.agreement
    assert all(comatrix_context_panel(line()).conditions.values())


@pytest.mark.parametrize("panel", PANELS)
@pytest.mark.parametrize("strong", [False, True])
def test_unit_panels_on_canonical_pair(plane, panel, strong):
    rep = panel(plane, strong)
    assert rep.conditions and all(rep.conditions.values())
    assert rep.ok


@pytest.mark.parametrize("panel", [ground_units_panel, two_sided_units_panel])
def test_unit_panels_on_zero_pair(zero_pair, panel):
    rep = panel(zero_pair)
    assert not any(rep.conditions.values()) and rep.agreement


def test_base_panel_guard(zero_pair):
    rep = base_units_panel(zero_pair)
    assert rep.details["precondition"].startswith("precondition failed")
    assert not rep.conditions


def test_enough_idempotents(plane):
    S = ElementaryRing(plane)
    assert enough_idempotents_check(S, [S.ring.find_unit()]).ok
    KK = library.kxk(2)
    P = Bimodule.right_module(KK, [np.diag([1, 0]), np.diag([0, 1])])
    SK = ElementaryRing(DualPair.canonical(P))
    rep = enough_idempotents_check(SK, [[1, 0], [0, 1]])
    assert rep.ok and all(rep.conditions.values())
    rep = enough_idempotents_check(SK, [[1, 0]])
    assert not rep.checks["S = sum e_i S = sum S e_i"]
    assert rep.details["S = sum e_i S = sum S e_i"]["deficit"] == 1


def test_summand_condition_examples():
    k = library.field(2)
    assert all(anh_marki_check(k.regular).conditions.values())
    D = library.dual_numbers(2)
    x_dead = Bimodule.right_module(D, [[[1]], [[0]]])
    rep = anh_marki_check(x_dead)
    assert not any(rep.conditions.values()) and rep.ok
    assert all(anh_marki_check(D.regular.restrict_left_to_ground()).conditions.values())


def test_dual_basis_count_frozen(plane):
    # frozen from the exhaustive oracle: S = M2(F2) has one element acting as the identity on k^2
    assert len(brute_dual_bases(plane, la.identity(2))) == 1
    assert len(brute_dual_bases(plane, [[1, 0]])) == 4


@given(st.integers(0, 2000), st.integers(1, 3))
def test_dual_basis_feasibility_matches_oracle(seed, dim):
    pair = generate("dual_pair", seed, dim).first("dual_pair")[1]
    rng = np.random.default_rng(seed)
    served = rng.integers(0, 2, size=(1, pair.M.dim))
    assert dual_basis_feasible(pair, served) == bool(brute_dual_bases(pair, served))


@given(st.integers(0, 2000), st.integers(1, 3))
def test_comatrix_context_conditions_agree(seed, dim):
    pair = generate("dual_pair", seed, dim).first("dual_pair")[1]
    assert comatrix_context_panel(pair).agreement
