"""Small standard instances used by the demos, the tests and the generators."""

from __future__ import annotations

import numpy as np

from . import exactla as la
from .algebras import Algebra, Bimodule, RingOver
from .exactla import DTYPE


def field(p: int = 2) -> Algebra:
    return Algebra.ground(p)


def kxk(p: int = 2) -> Algebra:
    return Algebra.diagonal(2, p)


def m2(p: int = 2) -> Algebra:
    return Algebra.matrix_algebra(2, p)


def dual_numbers(p: int = 2) -> Algebra:
    return Algebra.truncated_polynomial(2, p)


def nilpotent(p: int = 2) -> RingOver:
    """``x k[x]/(x^3)``: basis ``x, x^2``, every product of three elements vanishes."""
    c = np.zeros((2, 2, 2), dtype=DTYPE)
    c[0, 0, 1] = 1
    return RingOver.from_algebra(Algebra(c, p, None, name="xk[x]/x^3"))


def row_ring(p: int = 2) -> RingOver:
    """Top-row matrices ``[[a, b], [0, 0]]`` inside ``M2``: ``e11`` is a left unit, there is no right one."""
    e11 = np.array([[1, 0], [0, 0]])
    e12 = np.array([[0, 1], [0, 0]])
    alg = Algebra.from_matrices([e11, e12], p, name="R_row")
    return RingOver.from_algebra(alg)


def row_vectors(p: int = 2) -> Bimodule:
    """``e11 M2``: row vectors as a right ``M2``-module (left ground field)."""
    A = m2(p)
    acts = [np.asarray(m).T % p for m in A._matrices]
    return Bimodule.right_module(A, acts, name="e11M2")


def column_vectors(p: int = 2) -> Bimodule:
    """``M2 e11``: column vectors as a left ``M2``-module."""
    A = m2(p)
    return Bimodule.left_module(A, [np.asarray(m) % p for m in A._matrices], name="M2e11")


def free_module(A: Algebra, n: int = 1) -> Bimodule:
    """``A^n`` as a right ``A``-module with ground left action."""
    reg = A.regular
    acts = [np.kron(la.identity(n), R) for R in reg.right_actions]
    return Bimodule.right_module(A, acts, name=f"{A.name}^{n}")
