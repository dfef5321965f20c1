"""
Exact dense linear algebra over a prime field F_p.

Vectors are 1-D integer arrays, matrices are 2-D integer arrays acting on
column vectors (``f(v) = F @ v``).  Every result is reduced into ``[0, p)``.
Subspaces are stored by a basis in reduced row-echelon form, which makes
membership, coordinates and canonical representatives cheap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, Infeasible

DTYPE = np.int64


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    p = int(p)
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"modulus {p} is not prime")
    return p


def inverse(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(a, -1, p)


def as_matrix(m, p: int, shape=None) -> np.ndarray:
    arr = np.array(m, dtype=DTYPE)
    if shape is not None:
        arr = arr.reshape(shape)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    return arr % p


def as_vector(v, p: int) -> np.ndarray:
    return np.array(v, dtype=DTYPE).reshape(-1) % p


def as_rows(vectors, dim: int, p: int | None = None) -> np.ndarray:
    """Stack vectors of length ``dim`` as rows (copes with empty input and ``dim == 0``)."""
    arr = np.array(vectors, dtype=DTYPE)
    if arr.size == 0:
        return np.zeros((arr.shape[0] if arr.ndim == 2 else 0, dim), dtype=DTYPE)
    arr = arr.reshape(-1, dim)
    return arr % p if p else arr


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=DTYPE)


def _mm(a, b, p):
    # BLAS in float64 is exact while every partial sum stays below 2**53
    a, b = np.asarray(a) % p, np.asarray(b) % p
    if a.size and b.size and a.shape[-1] * (p - 1) ** 2 < 2 ** 52:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(DTYPE) % p
    return (a @ b) % p


def matmul(*mats, p: int) -> np.ndarray:
    out = np.asarray(mats[0]) % p
    for m in mats[1:]:
        out = _mm(out, m, p)
    return out


def kron(*mats, p: int) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m) % p
    return out % p


def rref(m, p: int = 2) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``m`` over F_p and its pivot columns."""
    R = np.array(m, dtype=DTYPE) % p
    if R.ndim != 2:
        raise ValueError("rref expects a 2-D matrix")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = inverse(R[r, c], p)
        if inv != 1:
            R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            R[hit] = (R[hit] - np.outer(col[hit], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(m, p: int = 2) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of F_p^n given by an rref basis (rows)."""

    p: int
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors, ambient_dim: int, p: int = 2) -> "Subspace":
        vecs = np.array(vectors, dtype=DTYPE)
        if ambient_dim == 0 or vecs.size == 0:
            return cls.zero(ambient_dim, p)
        vecs = vecs.reshape(-1, ambient_dim) % p
        if vecs.shape[0] == 0:
            return cls.zero(ambient_dim, p)
        R, piv = rref(vecs, p)
        return cls(p, ambient_dim, R[: len(piv)].copy(), tuple(piv))

    @classmethod
    def zero(cls, ambient_dim: int, p: int = 2) -> "Subspace":
        return cls(p, ambient_dim, np.zeros((0, ambient_dim), dtype=DTYPE), ())

    @classmethod
    def full(cls, ambient_dim: int, p: int = 2) -> "Subspace":
        return cls(p, ambient_dim, identity(ambient_dim), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        """Canonical representative of ``v`` modulo this subspace."""
        v = as_vector(v, self.p).copy()
        for row, c in zip(self.basis, self.pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v) -> np.ndarray:
        v = as_vector(v, self.p)
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return v[list(self.pivots)].copy()

    def vector(self, coords) -> np.ndarray:
        coords = as_vector(coords, self.p)
        if self.dim == 0:
            return np.zeros(self.ambient_dim, dtype=DTYPE)
        return (coords @ self.basis) % self.p

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def equals(self, other: "Subspace") -> bool:
        return (
            self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and np.array_equal(self.basis, other.basis)
        )

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(np.vstack([self.basis, other.basis]), self.ambient_dim, self.p)

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        stacked = np.vstack([self.basis, other.basis]).T
        ker = kernel(stacked, self.p)
        vecs = [(k[: self.dim] @ self.basis) % self.p for k in ker.basis]
        return Subspace.span(vecs, self.ambient_dim, self.p)

    def image(self, m) -> "Subspace":
        m = np.asarray(m)
        return Subspace.span((m @ self.basis.T).T % self.p, m.shape[0], self.p)

    def size(self) -> int:
        return self.p**self.dim

    def elements(self, budget: int | None = None):
        """All vectors of the subspace, in lexicographic order."""
        if budget is not None and self.size() > budget:
            raise BudgetExceeded(self.size(), budget)
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            yield self.vector(coeffs)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"


def kernel(m, p: int = 2) -> Subspace:
    """Null space ``{v : m v = 0}``."""
    m = np.asarray(m, dtype=DTYPE)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return Subspace.full(cols, p)
    R, piv = rref(m, p)
    free = [c for c in range(cols) if c not in set(piv)]
    vecs = []
    for f in free:
        v = np.zeros(cols, dtype=DTYPE)
        v[f] = 1
        for r, c in enumerate(piv):
            v[c] = (-R[r, f]) % p
        vecs.append(v)
    return Subspace.span(vecs, cols, p)


def image(m, p: int = 2) -> Subspace:
    """Column space of ``m``."""
    m = np.asarray(m, dtype=DTYPE)
    return Subspace.span(m.T, m.shape[0], p)


@dataclass(frozen=True, eq=False)
class AffineSet:
    """Solution set ``particular + kernel`` of a linear system."""

    particular: np.ndarray
    kernel: Subspace

    @property
    def p(self) -> int:
        return self.kernel.p

    def contains(self, x) -> bool:
        return self.kernel.contains((as_vector(x, self.p) - self.particular) % self.p)

    __contains__ = contains

    def size(self) -> int:
        return self.kernel.size()

    def lex_min(self) -> np.ndarray:
        """Lexicographically smallest member (zero on the kernel's pivots)."""
        return self.kernel.reduce(self.particular)

    def members(self, budget: int | None = None):
        """All members in lexicographic order of their coordinate vectors."""
        base = self.lex_min()
        for k in self.kernel.elements(budget):
            yield (base + k) % self.p


def solve_affine(a, b, p: int = 2) -> AffineSet:
    """Solve ``a x = b``; raise :class:`Infeasible` when ``b`` is not in the image."""
    a = np.asarray(a, dtype=DTYPE) % p
    b = as_vector(b, p)
    rows, cols = a.shape
    if rows == 0:
        return AffineSet(np.zeros(cols, dtype=DTYPE), Subspace.full(cols, p))
    R, piv = rref(np.hstack([a, b[:, None]]), p)
    if piv and piv[-1] == cols:
        raise Infeasible("right-hand side is not in the image")
    x = np.zeros(cols, dtype=DTYPE)
    for r, c in enumerate(piv):
        x[c] = R[r, cols]
    return AffineSet(x, kernel(a, p))


def solve_stacked(blocks, p: int = 2) -> AffineSet:
    """Solve a system given as ``[(A_i, b_i), ...]`` with a common unknown."""
    blocks = [(np.asarray(A, dtype=DTYPE), as_vector(b, p)) for A, b in blocks]
    blocks = [(A, b) for A, b in blocks if A.shape[0]]
    if not blocks:
        raise ValueError("no equations and unknown size not given")
    A = np.vstack([A for A, _ in blocks])
    b = np.concatenate([b for _, b in blocks])
    return solve_affine(A, b, p)


@dataclass(frozen=True, eq=False)
class QuotientSpace:
    """``F_p^n / U`` with projection ``pi`` and a section ``sigma``.

    The section sends quotient coordinate ``j`` to the standard basis vector
    on the ``j``-th non-pivot column of ``U``'s rref basis.
    """

    ambient_dim: int
    relations: Subspace
    projection: np.ndarray
    section: np.ndarray

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.relations.dim

    @property
    def p(self) -> int:
        return self.relations.p

    def project(self, v) -> np.ndarray:
        return (self.projection @ as_vector(v, self.p)) % self.p

    def lift(self, q) -> np.ndarray:
        return (self.section @ as_vector(q, self.p)) % self.p


def quotient_with_section(ambient_dim: int, relations: Subspace) -> QuotientSpace:
    p = relations.p
    piv = set(relations.pivots)
    free = [c for c in range(ambient_dim) if c not in piv]
    reducer = identity(ambient_dim)
    for row, c in zip(relations.basis, relations.pivots):
        reducer[:, c] = (reducer[:, c] - row) % p
    proj = reducer[free, :] % p
    sec = zeros(ambient_dim, len(free))
    for j, c in enumerate(free):
        sec[c, j] = 1
    return QuotientSpace(ambient_dim, relations, proj, sec)


def all_subspaces(n: int, p: int = 2, dims=None):
    """Enumerate every subspace of F_p^n (via all rref matrices)."""
    dims = range(n + 1) if dims is None else dims
    for k in dims:
        for piv in itertools.combinations(range(n), k):
            slots = [(r, c) for r in range(k) for c in range(piv[r] + 1, n) if c not in piv]
            for values in itertools.product(range(p), repeat=len(slots)):
                B = np.zeros((k, n), dtype=DTYPE)
                for r, c in enumerate(piv):
                    B[r, c] = 1
                for (r, c), v in zip(slots, values):
                    B[r, c] = v
                yield Subspace(p, n, B, tuple(piv))


def all_vectors(n: int, p: int = 2):
    for t in itertools.product(range(p), repeat=n):
        yield np.array(t, dtype=DTYPE)


def all_matrices(rows: int, cols: int, p: int = 2):
    for t in itertools.product(range(p), repeat=rows * cols):
        yield np.array(t, dtype=DTYPE).reshape(rows, cols)


def is_zero(m) -> bool:
    return not np.asarray(m).any()


def equal(a, b, p: int) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and not ((a - b) % p).any()
