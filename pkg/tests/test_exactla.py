import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from nonunital import exactla as la
from nonunital.errors import Infeasible
from nonunital.oracle import brute_kernel, brute_solutions


def matrices(p=2, max_rows=4, max_cols=4):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda s: arrays(np.int64, s, elements=st.integers(0, p - 1)))


def test_rref_of_repeated_row():
    R, piv = la.rref([[1, 1], [1, 1]], 2)
    assert R.tolist() == [[1, 1], [0, 0]]
    assert piv == [0]


def test_rref_identity_and_zero():
    R, piv = la.rref(np.eye(2, dtype=int), 2)
    assert R.tolist() == [[1, 0], [0, 1]] and piv == [0, 1]
    R, piv = la.rref(np.zeros((3, 3), dtype=int), 2)
    assert not R.any() and piv == []


def test_kernel_examples():
    K = la.kernel([[1, 1]], 2)
    assert K.basis.tolist() == [[1, 1]]
    assert la.kernel([[1, 1], [0, 1]], 2).dim == 0
    assert la.kernel(np.zeros((2, 3), dtype=int), 2).dim == 3


def test_solve_affine_examples():
    sol = la.solve_affine([[1, 0]], [1], 2)
    assert sol.particular.tolist() == [1, 0]
    assert sol.kernel.basis.tolist() == [[0, 1]]
    b = np.array([1, 0, 1])
    assert la.solve_affine(np.eye(3, dtype=int), b, 2).particular.tolist() == b.tolist()
    with pytest.raises(Infeasible):
        la.solve_affine(np.zeros((2, 2), dtype=int), [1, 0], 2)


def test_quotient_examples():
    q = la.quotient_with_section(2, la.Subspace.span([[1, 1]], 2, 2))
    assert q.dim == 1
    assert q.project([1, 0]).tolist() == q.project([0, 1]).tolist()
    q0 = la.quotient_with_section(3, la.Subspace.zero(3, 2))
    assert (q0.projection == np.eye(3)).all() and (q0.section == np.eye(3)).all()
    assert la.quotient_with_section(3, la.Subspace.full(3, 2)).dim == 0


def test_quotient_section_is_right_inverse():
    U = la.Subspace.span([[1, 0, 1, 1], [0, 1, 1, 0]], 4, 3)
    q = la.quotient_with_section(4, U)
    assert (q.projection @ q.section % 3 == np.eye(q.dim)).all()
    for u in U.basis:
        assert not q.project(u).any()


@given(matrices(p=3))
def test_kernel_matches_enumeration_mod3(m):
    K = la.kernel(m, 3)
    assert {tuple(v) for v in K.elements()} == brute_kernel(m, 3)


@given(matrices(), st.data())
def test_solve_matches_enumeration(m, data):
    b = data.draw(arrays(np.int64, m.shape[0], elements=st.integers(0, 1)))
    brute = brute_solutions(m, b, 2)
    try:
        sol = la.solve_affine(m, b, 2)
    except Infeasible:
        assert not brute
        return
    assert {tuple(v) for v in sol.members()} == brute
    assert tuple(sol.lex_min()) == min(brute)


@given(matrices(p=5, max_rows=5, max_cols=5))
def test_rank_nullity(m):
    assert la.rank(m, 5) + la.kernel(m, 5).dim == m.shape[1]


@given(matrices(p=3))
def test_rref_is_idempotent_and_spans_rows(m):
    R, piv = la.rref(m, 3)
    R2, piv2 = la.rref(R, 3)
    assert (R == R2).all() and piv == piv2
    assert la.Subspace.span(m, m.shape[1], 3).equals(la.Subspace.span(R, m.shape[1], 3))


def test_large_products_stay_exact():
    # float BLAS path and the integer path must agree
    rng = np.random.default_rng(0)
    a = rng.integers(0, 101, size=(30, 700))
    b = rng.integers(0, 101, size=(700, 20))
    assert (la.matmul(a, b, p=101) == (a.astype(object) @ b.astype(object)) % 101).all()


def test_all_subspaces_count():
    # Gaussian binomial counts over F_2 in dimension 3: 1, 7, 7, 1
    counts = [sum(1 for _ in la.all_subspaces(3, 2, dims=[d])) for d in range(4)]
    assert counts == [1, 7, 7, 1]


def test_exhaustive_small_kernels():
    for r, c in itertools.product(range(1, 3), repeat=2):
        for m in la.all_matrices(r, c, 2):
            assert {tuple(v) for v in la.kernel(m, 2).elements()} == brute_kernel(m, 2)
