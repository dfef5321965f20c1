import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonunital import exactla as la
from nonunital import library
from nonunital.algebras import Bimodule, ModuleOver, RingOver
from nonunital.errors import Infeasible
from nonunital.local_units import (
    SplitSystem,
    build_idempotent_two_sided_unit,
    build_local_unit,
    check_firm,
    check_split_system,
    colimit_with_retractions,
    combine_units,
    find_idempotent_local_unit,
    find_local_unit,
    has_local_units,
    induce_base_action,
    regular_pair,
)
from nonunital.oracle import brute_local_units
from nonunital.workbench.generate import random_algebra

E11, E12, E21, E22 = np.eye(4, dtype=np.int64)
I2 = np.array([1, 0, 0, 1])


def ring(alg):
    return RingOver.from_algebra(alg)


def right(r):
    return ModuleOver.regular(r, "right")


def test_unital_field_unit_is_one():
    r = ring(library.field(2))
    assert find_local_unit(r, right(r), [[1]]).element.tolist() == [1]


def test_nilpotent_ring_has_no_unit_on_x():
    r = library.nilpotent(2)
    with pytest.raises(Infeasible):
        find_local_unit(r, right(r), [[1, 0]])
    with pytest.raises(Infeasible):
        find_idempotent_local_unit(r, right(r), [[1, 0]])
    # frozen from the exhaustive oracle: no element of R serves x
    assert brute_local_units(r, right(r), [[1, 0]]) == []


def test_row_ring_left_unit_is_e11():
    r = library.row_ring(2)
    cert = find_local_unit(r, ModuleOver.regular(r, "left"), la.identity(2))
    assert cert.element.tolist() == [1, 0]
    assert cert.side == "left"
    # the row ring has no right unit on its basis
    assert not has_local_units(r, right(r))


def test_row_ring_units_frozen():
    r = library.row_ring(2)
    left = [e.tolist() for e in brute_local_units(r, ModuleOver.regular(r, "left"), la.identity(2))]
    assert left == [[1, 0], [1, 1]]


def test_combine_trivial_cases():
    r = ring(library.field(2))
    assert combine_units(r, [1], [1]).tolist() == [1]
    m = ring(library.m2(2))
    assert combine_units(m, [0, 0, 0, 0], E11).tolist() == E11.tolist()


def test_combine_matrix_units_to_identity():
    m = ring(library.m2(2))
    assert combine_units(m, E11, I2, "idempotent").tolist() == I2.tolist()


def test_idempotent_tie_break_is_lexicographic():
    r = ring(library.kxk(2))
    cert = find_idempotent_local_unit(r, right(r), [[1, 0]])
    assert cert.element.tolist() == [1, 0]
    assert [e.tolist() for e in brute_local_units(r, right(r), [[1, 0]], idempotent=True)] == [[1, 0], [1, 1]]


def test_unital_ring_idempotent_unit_is_one():
    r = ring(library.m2(2))
    cert = find_idempotent_local_unit(r, right(r), la.identity(4))
    assert cert.element.tolist() == I2.tolist()


def test_firmness():
    k = ring(library.field(2))
    assert check_firm(right(k))
    nil = library.nilpotent(2)
    zero = ModuleOver(nil, Bimodule.vector_space(1, 2), [[[0]], [[0]]], "right")
    assert not check_firm(zero)
    m2 = ring(library.m2(2))
    row = library.row_vectors(2)
    assert check_firm(ModuleOver(m2, Bimodule.vector_space(2, 2), row.right_actions, "right"))


def test_induced_base_action_on_row_vectors_is_scalar():
    m2 = ring(library.m2(2))
    row = library.row_vectors(2)
    M = ModuleOver(m2, Bimodule.vector_space(2, 2), row.right_actions, "right")
    B = induce_base_action(M)
    assert B.right.dim == 1 and (B.right_actions[0] == np.eye(2)).all()


def test_build_local_unit_on_kxk():
    r = ring(library.kxk(2))
    cert = build_local_unit(r, right(r), la.identity(2))
    assert cert.check().ok
    assert cert.element.tolist() == [1, 1]


def test_build_two_sided_idempotent_unit_on_m2():
    r = ring(library.m2(2))
    cert = build_idempotent_two_sided_unit(r, [E11])
    assert cert.check().ok and cert.idempotent


def test_split_chain_colimit():
    V = [Bimodule.vector_space(n, 2) for n in (1, 2, 3)]
    inc = [np.eye(2, 1, dtype=int), np.eye(3, 2, dtype=int)]
    proj = [np.eye(1, 2, dtype=int), np.eye(2, 3, dtype=int)]
    s = SplitSystem.chain(V, inc, proj)
    rep = check_split_system(s)
    assert rep.ok and rep.agreement
    colim, phis, psis = colimit_with_retractions(s)
    assert colim.dim == 3
    assert la.rank(phis[2], 2) == 3


def test_single_object_colimit():
    s = SplitSystem({0: Bimodule.vector_space(2, 2)}, set(), {})
    colim, phis, psis = colimit_with_retractions(s)
    assert colim.dim == 2 and (phis[0] == np.eye(2)).all() and (psis[0] == np.eye(2)).all()


def test_perturbed_retraction_is_flagged():
    V = [Bimodule.vector_space(n, 2) for n in (1, 2, 3)]
    inc = [np.eye(2, 1, dtype=int), np.eye(3, 2, dtype=int)]
    proj = [np.eye(1, 2, dtype=int), np.eye(2, 3, dtype=int)]
    s = SplitSystem.chain(V, inc, proj)
    s.psi[(0, 2)] = np.array([[1, 1, 0]])
    rep = check_split_system(s)
    assert not rep.checks["backward maps compose"]
    assert (0, 1, 2) in rep.details["backward maps compose"]["triples"]


@given(st.integers(0, 5000), st.integers(1, 3), st.sampled_from(["right", "left"]))
def test_constructive_unit_matches_oracle(seed, dim, side):
    rng = np.random.default_rng(seed)
    r = ring(random_algebra(rng, dim, 2))
    mod = ModuleOver.regular(r, side)
    served = rng.integers(0, 2, size=(int(rng.integers(1, 3)), dim))
    exists = bool(brute_local_units(r, mod, served))
    try:
        cert = build_local_unit(r, mod, served)
        assert cert.check().ok
        built = True
    except Infeasible:
        built = False
    assert built == exists


@given(st.integers(0, 5000), st.integers(1, 3))
def test_idempotent_search_matches_oracle(seed, dim):
    rng = np.random.default_rng(seed)
    r = ring(random_algebra(rng, dim, 2))
    served = rng.integers(0, 2, size=(1, dim))
    brute = brute_local_units(r, right(r), served, idempotent=True)
    try:
        found = find_idempotent_local_unit(r, right(r), served).element.tolist()
    except Infeasible:
        found = None
    assert found == (min(e.tolist() for e in brute) if brute else None)


@given(st.integers(0, 5000), st.integers(1, 3))
def test_two_sided_search_matches_oracle(seed, dim):
    rng = np.random.default_rng(seed)
    r = ring(random_algebra(rng, dim, 2))
    served = rng.integers(0, 2, size=(1, dim))
    pair = regular_pair(r)
    brute = brute_local_units(r, pair, (served, served))
    try:
        found = find_local_unit(r, pair, (served, served)).element.tolist()
    except Infeasible:
        found = None
    assert found == (brute[0].tolist() if brute else None)
