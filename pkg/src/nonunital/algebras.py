"""
Finite-dimensional algebras, bimodules, tensor products over an algebra,
hom-spaces, and rings/modules over a base algebra.

Conventions
-----------
* An algebra of dimension ``n`` is given by structure constants
  ``c[i, j, k]`` with ``e_i e_j = sum_k c[i, j, k] e_k``; it need not be unital.
* A bimodule stores one matrix per basis element of each algebra:
  ``left_actions[i] @ m == e_i . m`` and ``right_actions[j] @ m == m . e_j``.
* Tensor chains ``X_1 (x) ... (x) X_n`` use Kronecker (row-major) raw
  coordinates; the quotient by the balancing relations comes with a
  projection ``pi`` and a section ``sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import prod

import numpy as np

from . import exactla as la
from .errors import AxiomError, Infeasible, Report
from .exactla import DTYPE, Subspace


def _basis_vector(n, i):
    v = np.zeros(n, dtype=DTYPE)
    v[i] = 1
    return v


@dataclass(frozen=True, eq=False)
class Algebra:
    """Associative algebra over F_p by structure constants, unit optional."""

    structure: np.ndarray
    p: int = 2
    unit: np.ndarray | None = None
    name: str = ""

    def __post_init__(self):
        la.check_prime(self.p)
        c = np.array(self.structure, dtype=DTYPE) % self.p
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise AxiomError("shape", message=f"structure constants must be n x n x n, got {c.shape}")
        object.__setattr__(self, "structure", c)
        if self.unit is not None:
            object.__setattr__(self, "unit", la.as_vector(self.unit, self.p))

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def basis(self, i) -> np.ndarray:
        return _basis_vector(self.dim, i)

    def mul(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", la.as_vector(x, self.p), la.as_vector(y, self.p), self.structure) % self.p

    def left_mult(self, x) -> np.ndarray:
        """Matrix of ``y -> x y``."""
        return np.einsum("i,ijk->kj", la.as_vector(x, self.p), self.structure) % self.p

    def right_mult(self, x) -> np.ndarray:
        """Matrix of ``y -> y x``."""
        return np.einsum("j,ijk->ki", la.as_vector(x, self.p), self.structure) % self.p

    @cached_property
    def left_mults(self):
        return tuple(self.left_mult(self.basis(i)) for i in range(self.dim))

    @cached_property
    def right_mults(self):
        return tuple(self.right_mult(self.basis(i)) for i in range(self.dim))

    def associativity_failure(self):
        """First basis triple ``(i, j, k)`` violating associativity, or None."""
        c = self.structure
        lhs = np.einsum("ijm,mkl->ijkl", c, c) % self.p
        rhs = np.einsum("jkm,iml->ijkl", c, c) % self.p
        bad = np.argwhere((lhs - rhs) % self.p)
        if bad.size:
            return tuple(int(t) for t in bad[0][:3])
        return None

    def is_unit(self, u) -> bool:
        u = la.as_vector(u, self.p)
        I = la.identity(self.dim)
        return la.equal(self.left_mult(u), I, self.p) and la.equal(self.right_mult(u), I, self.p)

    def validate(self) -> "Algebra":
        bad = self.associativity_failure()
        if bad is not None:
            raise AxiomError("associativity", where=bad)
        if self.unit is not None and not self.is_unit(self.unit):
            raise AxiomError("unit")
        return self

    def find_unit(self):
        """Two-sided unit if one exists, else None."""
        n = self.dim
        c = self.structure
        # left_mult(e)[k, j] = sum_i e_i c[i, j, k]; right_mult(e)[k, i] = sum_j e_j c[i, j, k]
        A1 = c.transpose(2, 1, 0).reshape(n * n, n)
        A2 = c.transpose(2, 0, 1).reshape(n * n, n)
        I = la.identity(n).reshape(-1)
        try:
            sol = la.solve_stacked([(A1, I), (A2, I)], self.p)
        except Infeasible:
            return None
        return sol.lex_min()

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def with_unit(self) -> "Algebra":
        """Same algebra with the unit filled in when it exists."""
        if self.unit is not None:
            return self
        u = self.find_unit()
        return self if u is None else Algebra(self.structure, self.p, u, self.name)

    def opposite(self) -> "Algebra":
        return _opposite_algebra(self)

    def same_as(self, other: "Algebra") -> bool:
        return other is self or (
            self.p == other.p and self.dim == other.dim and np.array_equal(self.structure, other.structure)
        )

    @cached_property
    def regular(self) -> "Bimodule":
        """The algebra as a bimodule over itself."""
        return Bimodule(self, self, self.left_mults, self.right_mults, name=self.name or "A")

    def __repr__(self):
        u = "unital" if self.unit is not None else "non-unital"
        return f"Algebra({self.name or '?'}, dim={self.dim}, p={self.p}, {u})"

    # constructors -----------------------------------------------------

    @classmethod
    def ground(cls, p: int = 2) -> "Algebra":
        return _ground(p)

    @classmethod
    def from_matrices(cls, mats, p: int = 2, name: str = "") -> "Algebra":
        """Subalgebra of a matrix algebra spanned by ``mats``.

        If the matrices are linearly independent they are kept as the basis;
        otherwise an rref basis of their span is used.  Closure under the
        product is checked, so the result is associative by construction.
        """
        mats = [la.as_matrix(m, p) for m in mats]
        n = mats[0].shape[0]
        flat = np.array([m.reshape(-1) for m in mats], dtype=DTYPE) % p
        if la.rank(flat, p) < len(mats):
            flat = Subspace.span(flat, n * n, p).basis
        d = flat.shape[0]
        cols = flat.T
        c = np.zeros((d, d, d), dtype=DTYPE)
        basis = [row.reshape(n, n) for row in flat]
        for i in range(d):
            for j in range(d):
                prod_ = (basis[i] @ basis[j]) % p
                try:
                    sol = la.solve_affine(cols, prod_.reshape(-1), p)
                except Infeasible:
                    raise AxiomError("closure under product", where=(i, j)) from None
                c[i, j] = sol.particular
        unit = None
        try:
            unit = la.solve_affine(cols, la.identity(n).reshape(-1), p).particular
        except Infeasible:
            pass
        alg = cls(c, p, unit, name)
        object.__setattr__(alg, "_matrices", tuple(basis))
        return alg

    @classmethod
    def matrix_algebra(cls, n: int, p: int = 2) -> "Algebra":
        units = []
        for i in range(n):
            for j in range(n):
                m = np.zeros((n, n), dtype=DTYPE)
                m[i, j] = 1
                units.append(m)
        return cls.from_matrices(units, p, name=f"M{n}(F{p})")

    @classmethod
    def diagonal(cls, n: int, p: int = 2) -> "Algebra":
        """``k x ... x k`` (n copies)."""
        c = np.zeros((n, n, n), dtype=DTYPE)
        for i in range(n):
            c[i, i, i] = 1
        return cls(c, p, np.ones(n, dtype=DTYPE), name="k" * n if n < 4 else f"k^{n}")

    @classmethod
    def truncated_polynomial(cls, n: int, p: int = 2) -> "Algebra":
        """``k[x]/(x^n)`` with basis ``1, x, ..., x^(n-1)``."""
        c = np.zeros((n, n, n), dtype=DTYPE)
        for i in range(n):
            for j in range(n):
                if i + j < n:
                    c[i, j, i + j] = 1
        return cls(c, p, _basis_vector(n, 0), name=f"k[x]/x^{n}")

    @classmethod
    def zero_product(cls, n: int, p: int = 2) -> "Algebra":
        """``n``-dimensional algebra with all products zero."""
        return cls(np.zeros((n, n, n), dtype=DTYPE), p, None, name=f"null{n}")

    @classmethod
    def product(cls, *algs: "Algebra") -> "Algebra":
        p = algs[0].p
        n = sum(a.dim for a in algs)
        c = np.zeros((n, n, n), dtype=DTYPE)
        off = 0
        units = []
        for a in algs:
            d = a.dim
            c[off:off + d, off:off + d, off:off + d] = a.structure
            units.append(a.unit)
            off += d
        unit = np.concatenate(units) if all(u is not None for u in units) else None
        return cls(c, p, unit, name="x".join(a.name or "?" for a in algs))


@lru_cache(maxsize=None)
def _ground(p):
    return Algebra(np.ones((1, 1, 1), dtype=DTYPE), p, np.ones(1, dtype=DTYPE), name="k")


@lru_cache(maxsize=256)
def _opposite_algebra(a):
    u = a.unit
    return Algebra(a.structure.transpose(1, 0, 2), a.p, u, name=f"{a.name}^op")


@dataclass(frozen=True, eq=False)
class Bimodule:
    """A ``(left, right)``-bimodule given by action matrices."""

    left: Algebra
    right: Algebra
    left_actions: tuple
    right_actions: tuple
    name: str = ""

    def __post_init__(self):
        p = self.left.p
        la_ = tuple(la.as_matrix(m, p) for m in self.left_actions)
        ra_ = tuple(la.as_matrix(m, p) for m in self.right_actions)
        object.__setattr__(self, "left_actions", la_)
        object.__setattr__(self, "right_actions", ra_)
        if len(la_) != self.left.dim or len(ra_) != self.right.dim:
            raise AxiomError("shape", message="one action matrix per algebra basis element is required")
        d = self.dim
        for m in la_ + ra_:
            if m.shape != (d, d):
                raise AxiomError("shape", message=f"action matrix of shape {m.shape}, expected {(d, d)}")

    @property
    def p(self) -> int:
        return self.left.p

    @cached_property
    def dim(self) -> int:
        if self.left_actions:
            return self.left_actions[0].shape[0]
        if self.right_actions:
            return self.right_actions[0].shape[0]
        return 0

    def act_left(self, a) -> np.ndarray:
        a = la.as_vector(a, self.p)
        return np.tensordot(a, np.array(self.left_actions), axes=1) % self.p

    def act_right(self, a) -> np.ndarray:
        a = la.as_vector(a, self.p)
        return np.tensordot(a, np.array(self.right_actions), axes=1) % self.p

    def check(self) -> Report:
        rep = Report(f"bimodule {self.name or '?'}")
        p = self.p
        L, R = self.left_actions, self.right_actions
        A, B = self.left, self.right
        ok = all(
            la.equal(self.act_left(A.mul(A.basis(i), A.basis(j))), L[i] @ L[j] % p, p)
            for i in range(A.dim) for j in range(A.dim)
        )
        rep.add("left action multiplicative", ok)
        ok = all(
            la.equal(self.act_right(B.mul(B.basis(i), B.basis(j))), R[j] @ R[i] % p, p)
            for i in range(B.dim) for j in range(B.dim)
        )
        rep.add("right action anti-multiplicative", ok)
        rep.add("actions commute", all(la.equal(l @ r % p, r @ l % p, p) for l in L for r in R))
        I = la.identity(self.dim)
        if A.unit is not None:
            rep.add("left action unital", la.equal(self.act_left(A.unit), I, p))
        if B.unit is not None:
            rep.add("right action unital", la.equal(self.act_right(B.unit), I, p))
        return rep

    def validate(self) -> "Bimodule":
        rep = self.check()
        if not rep.ok:
            raise AxiomError(rep.failures[0], where=self.name or None)
        return self

    def opposite(self) -> "Bimodule":
        """The ``(right^op, left^op)``-bimodule on the same space."""
        return Bimodule(self.right.opposite(), self.left.opposite(), self.right_actions, self.left_actions,
                        name=f"{self.name}^op")

    def is_invariant(self, sub: Subspace, sides=("left", "right")) -> bool:
        mats = []
        if "left" in sides:
            mats += list(self.left_actions)
        if "right" in sides:
            mats += list(self.right_actions)
        return all(sub.contains(m @ v % self.p) for m in mats for v in sub.basis)

    def submodule(self, sub: Subspace, sides=("left", "right")):
        """Restriction to an invariant subspace: ``(bimodule, inclusion)``.

        With ``sides=("right",)`` the left algebra is replaced by the ground
        field, so the result is a right module only.
        """
        if not self.is_invariant(sub, sides):
            raise AxiomError("invariance", message="subspace is not closed under the actions")
        inc = sub.basis.T.copy()
        restrict = lambda m: np.array([sub.coordinates(m @ v % self.p) for v in sub.basis],
                                      dtype=DTYPE).T.reshape(sub.dim, sub.dim)
        left, L = (self.left, [restrict(m) for m in self.left_actions]) if "left" in sides else \
            (Algebra.ground(self.p), [la.identity(sub.dim)])
        right, R = (self.right, [restrict(m) for m in self.right_actions]) if "right" in sides else \
            (Algebra.ground(self.p), [la.identity(sub.dim)])
        return Bimodule(left, right, L, R, name=f"sub({self.name})"), inc

    def quotient(self, sub: Subspace):
        """``(bimodule, projection)`` for an invariant subspace."""
        if not self.is_invariant(sub):
            raise AxiomError("invariance", message="subspace is not closed under the actions")
        q = la.quotient_with_section(self.dim, sub)
        desc = lambda m: q.projection @ m @ q.section % self.p
        return Bimodule(self.left, self.right, [desc(m) for m in self.left_actions],
                        [desc(m) for m in self.right_actions], name=f"{self.name}/U"), q.projection

    def direct_sum(self, other: "Bimodule") -> "Bimodule":
        blk = lambda a, b: np.block([[a, la.zeros(a.shape[0], b.shape[1])], [la.zeros(b.shape[0], a.shape[1]), b]])
        return Bimodule(self.left, self.right,
                        [blk(a, b) for a, b in zip(self.left_actions, other.left_actions)],
                        [blk(a, b) for a, b in zip(self.right_actions, other.right_actions)],
                        name=f"{self.name}+{other.name}")

    def restrict_left_to_ground(self) -> "Bimodule":
        k = Algebra.ground(self.p)
        return Bimodule(k, self.right, [la.identity(self.dim)], self.right_actions, name=self.name)

    def restrict_right_to_ground(self) -> "Bimodule":
        k = Algebra.ground(self.p)
        return Bimodule(self.left, k, self.left_actions, [la.identity(self.dim)], name=self.name)

    def __repr__(self):
        return f"Bimodule({self.name or '?'}, dim={self.dim}, left={self.left.name}, right={self.right.name})"

    # constructors -----------------------------------------------------

    @classmethod
    def right_module(cls, algebra: Algebra, actions, name: str = "") -> "Bimodule":
        d = la.as_matrix(actions[0], algebra.p).shape[0]
        return cls(Algebra.ground(algebra.p), algebra, [la.identity(d)], actions, name=name)

    @classmethod
    def left_module(cls, algebra: Algebra, actions, name: str = "") -> "Bimodule":
        d = la.as_matrix(actions[0], algebra.p).shape[0]
        return cls(algebra, Algebra.ground(algebra.p), actions, [la.identity(d)], name=name)

    @classmethod
    def vector_space(cls, n: int, p: int = 2, name: str = "") -> "Bimodule":
        k = Algebra.ground(p)
        return cls(k, k, [la.identity(n)], [la.identity(n)], name=name or f"k^{n}")

    @classmethod
    def zero(cls, left: Algebra, right: Algebra) -> "Bimodule":
        return cls(left, right, [la.zeros(0, 0)] * left.dim, [la.zeros(0, 0)] * right.dim, name="0")


@dataclass(frozen=True, eq=False)
class BimoduleMap:
    """A linear map between bimodules, expected to commute with both actions."""

    source: Bimodule
    target: Bimodule
    matrix: np.ndarray

    def __post_init__(self):
        m = la.as_matrix(self.matrix, self.source.p, None) if np.asarray(self.matrix).size else \
            np.zeros((self.target.dim, self.source.dim), dtype=DTYPE)
        m = m.reshape(self.target.dim, self.source.dim)
        object.__setattr__(self, "matrix", m)

    @property
    def p(self):
        return self.source.p

    def __call__(self, v):
        return self.matrix @ la.as_vector(v, self.p) % self.p

    def check(self) -> Report:
        p, F = self.p, self.matrix
        rep = Report("bimodule map")
        rep.add("left linear", all(la.equal(F @ a % p, b @ F % p, p)
                                   for a, b in zip(self.source.left_actions, self.target.left_actions)))
        rep.add("right linear", all(la.equal(F @ a % p, b @ F % p, p)
                                    for a, b in zip(self.source.right_actions, self.target.right_actions)))
        return rep

    def validate(self) -> "BimoduleMap":
        rep = self.check()
        if not rep.ok:
            raise AxiomError(rep.failures[0])
        return self

    def compose(self, other: "BimoduleMap") -> "BimoduleMap":
        """``self o other``."""
        if other.target.dim != self.source.dim:
            raise ValueError("dimension mismatch in composition")
        return BimoduleMap(other.source, self.target, self.matrix @ other.matrix % self.p)

    def rank(self) -> int:
        return la.rank(self.matrix, self.p)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    @classmethod
    def identity(cls, m: Bimodule) -> "BimoduleMap":
        return cls(m, m, la.identity(m.dim))

    @classmethod
    def zero(cls, s: Bimodule, t: Bimodule) -> "BimoduleMap":
        return cls(s, t, la.zeros(t.dim, s.dim))


class Tensor:
    """``X_1 (x)_{A_1} X_2 (x) ... (x)_{A_{n-1}} X_n`` as a quotient of the raw tensor.

    ``A_i`` is the right algebra of ``X_i`` (which must match the left
    algebra of ``X_{i+1}``).  Longer chains are built by iterated binary
    quotients; ``pi`` / ``sigma`` always refer to the flat Kronecker
    coordinates of all factors.
    """

    def __init__(self, factors):
        self.factors = tuple(factors)
        if len(self.factors) < 2:
            raise ValueError("a tensor chain needs at least two factors")
        self.p = self.factors[0].p
        for x, y in zip(self.factors, self.factors[1:]):
            if x.right.dim != y.left.dim or not x.right.same_as(y.left):
                raise AxiomError("action compatibility",
                                 message=f"right algebra of {x.name!r} does not match left algebra of {y.name!r}")
        self.dims = tuple(f.dim for f in self.factors)
        self.raw_dim = prod(self.dims)
        p = self.p
        if len(self.factors) == 2:
            X, Y = self.factors
            gens = [
                (np.kron(r, la.identity(Y.dim)) - np.kron(la.identity(X.dim), l)).T % p
                for r, l in zip(X.right_actions, Y.left_actions)
            ]
            rel = Subspace.span(np.vstack(gens) if gens else np.zeros((0, self.raw_dim)), self.raw_dim, p)
            q = la.quotient_with_section(self.raw_dim, rel)
            self.pi, self.sigma = q.projection, q.section
        else:
            front = tensor(*self.factors[:-1])
            last = self.factors[-1]
            binary = tensor(front.carrier, last)
            I = la.identity(last.dim)
            self.pi = la.matmul(binary.pi, np.kron(front.pi, I), p=p)
            self.sigma = la.matmul(np.kron(front.sigma, I), binary.sigma, p=p)
        self.dim = self.pi.shape[0]
        first, lastf = self.factors[0], self.factors[-1]
        rest_l = self.raw_dim // first.dim if first.dim else 0
        rest_r = self.raw_dim // lastf.dim if lastf.dim else 0
        sig_l = self.sigma.reshape(first.dim, rest_l, self.dim)
        sig_r = self.sigma.reshape(rest_r, lastf.dim, self.dim)
        L = [la.matmul(self.pi, np.einsum("ij,jrk->irk", a, sig_l).reshape(self.raw_dim, self.dim), p=p)
             for a in first.left_actions]
        R = [la.matmul(self.pi, np.einsum("ij,rjk->rik", a, sig_r).reshape(self.raw_dim, self.dim), p=p)
             for a in lastf.right_actions]
        name = "(x)".join(f.name or "?" for f in self.factors)
        self.carrier = Bimodule(first.left, lastf.right, L, R, name=name)

    @cached_property
    def quotient(self) -> la.QuotientSpace:
        rel = la.kernel(self.pi, self.p)
        return la.QuotientSpace(self.raw_dim, rel, self.pi, self.sigma)

    def pure(self, *vecs) -> np.ndarray:
        v = la.as_vector(vecs[0], self.p)
        for w in vecs[1:]:
            v = np.kron(v, la.as_vector(w, self.p))
        return self.pi @ v % self.p

    def project(self, raw) -> np.ndarray:
        return self.pi @ la.as_vector(raw, self.p) % self.p

    def lift(self, q) -> np.ndarray:
        return self.sigma @ la.as_vector(q, self.p) % self.p

    def __repr__(self):
        return f"Tensor({self.carrier.name}, dim={self.dim}, raw={self.raw_dim})"


@lru_cache(maxsize=512)
def tensor(*factors: Bimodule) -> Tensor:
    return Tensor(factors)


def tensor_over(m: Bimodule, n: Bimodule, over: Algebra | None = None) -> Tensor:
    """``M (x)_A N`` for a right ``A``-module ``M`` and left ``A``-module ``N``."""
    if over is not None and not (over.same_as(m.right) and over.same_as(n.left)):
        raise AxiomError("action compatibility", message="modules are not acting through the given algebra")
    return tensor(m, n)


def raw_map(matrix, src: Tensor | None = None, tgt: Tensor | None = None) -> np.ndarray:
    """Lift a map between quotient carriers to raw coordinates."""
    m = np.asarray(matrix, dtype=DTYPE)
    if src is not None:
        m = m @ src.pi
    if tgt is not None:
        m = tgt.sigma @ m
    p = (src or tgt).p if (src or tgt) is not None else None
    return m % p if p else m


def induced(src: Tensor, tgt: Tensor, raw_factors, check: bool = True) -> np.ndarray:
    """Matrix of ``f_1 (x) ... (x) f_r`` from ``src`` to ``tgt``.

    Each ``raw_factors[i]`` is a raw-to-raw matrix on a consecutive group
    of factors.  When ``check`` is set, the raw map is verified to send
    the balancing relations of ``src`` into those of ``tgt``.
    """
    p = src.p
    K = raw_factors[0] % p
    for f in raw_factors[1:]:
        K = np.kron(K, f) % p
    if K.shape != (tgt.raw_dim, src.raw_dim):
        raise ValueError(f"raw map of shape {K.shape}, expected {(tgt.raw_dim, src.raw_dim)}")
    M = la.matmul(tgt.pi, K, p=p)
    out = la.matmul(M, src.sigma, p=p)
    if check and ((M - la.matmul(out, src.pi, p=p)) % p).any():
        raise AxiomError("well-defined on the tensor product",
                         message="induced map is not balanced over the middle algebra")
    return out


def map_on_tensor(f: BimoduleMap, g: BimoduleMap) -> BimoduleMap:
    """``f (x) g`` between the tensor products of sources and targets."""
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    return BimoduleMap(src.carrier, tgt.carrier, induced(src, tgt, [f.matrix, g.matrix]))


# ---------------------------------------------------------------------------
# hom spaces

@dataclass(frozen=True, eq=False)
class HomSpace:
    """Module maps ``M -> A`` as a subspace of ``dim(A) x dim(M)`` matrices.

    ``side == "right"``: right ``A``-linear maps (``M^*``), an
    ``(A, B)``-bimodule for a ``(B, A)``-bimodule ``M``.
    ``side == "left"``: left ``A``-linear maps (``*M``), a
    ``(B, A)``-bimodule for an ``(A, B)``-bimodule ``M``.
    """

    module: Bimodule
    side: str
    space: Subspace
    carrier: Bimodule

    @property
    def algebra(self) -> Algebra:
        return self.module.right if self.side == "right" else self.module.left

    @property
    def p(self):
        return self.module.p

    @property
    def dim(self):
        return self.space.dim

    def matrix(self, coords) -> np.ndarray:
        return self.space.vector(coords).reshape(self.algebra.dim, self.module.dim)

    def basis_matrices(self):
        return [row.reshape(self.algebra.dim, self.module.dim) for row in self.space.basis]

    def coords(self, F) -> np.ndarray:
        return self.space.coordinates(np.asarray(F).reshape(-1))

    def contains(self, F) -> bool:
        return self.space.contains(np.asarray(F).reshape(-1))

    def evaluate(self, coords, m) -> np.ndarray:
        return self.matrix(coords) @ la.as_vector(m, self.p) % self.p


def _linear_constraints(pairs, rows, cols, p):
    """Rows expressing ``F X_i == Y_i F`` for unknown ``F`` (row-major)."""
    blocks = [np.kron(la.identity(rows), X.T) - np.kron(Y, la.identity(cols)) for X, Y in pairs]
    if not blocks:
        return np.zeros((0, rows * cols), dtype=DTYPE)
    return np.vstack(blocks) % p


def hom_right(m: Bimodule, a: Algebra | None = None) -> HomSpace:
    """``M^* = Hom_A(M, A)`` with ``(a f b)(x) = a f(b x)``."""
    A = m.right if a is None else a
    if not A.same_as(m.right):
        raise AxiomError("action compatibility")
    if A.unit is None:
        raise AxiomError("unital algebra", message="hom_right requires a unital algebra")
    return _hom_right(m)


@lru_cache(maxsize=256)
def _hom_right(m):
    A, p = m.right, m.p
    cons = _linear_constraints(list(zip(m.right_actions, A.right_mults)), A.dim, m.dim, p)
    space = la.kernel(cons, p) if cons.shape[0] else Subspace.full(A.dim * m.dim, p)
    mats = [row.reshape(A.dim, m.dim) for row in space.basis]
    coords = lambda F: space.coordinates(F.reshape(-1))
    L = [np.array([coords(la_ @ F % p) for F in mats], dtype=DTYPE).T.reshape(space.dim, space.dim)
         for la_ in A.left_mults]
    R = [np.array([coords(F @ lb % p) for F in mats], dtype=DTYPE).T.reshape(space.dim, space.dim)
         for lb in m.left_actions]
    carrier = Bimodule(A, m.left, L, R, name=f"{m.name}*")
    return HomSpace(m, "right", space, carrier)


def hom_left(m: Bimodule, a: Algebra | None = None) -> HomSpace:
    """``*M = _A Hom(M, A)`` with ``(b f a)(x) = f(x b) a``."""
    A = m.left if a is None else a
    if not A.same_as(m.left):
        raise AxiomError("action compatibility")
    if A.unit is None:
        raise AxiomError("unital algebra", message="hom_left requires a unital algebra")
    return _hom_left(m)


@lru_cache(maxsize=256)
def _hom_left(m):
    A, p = m.left, m.p
    cons = _linear_constraints(list(zip(m.left_actions, A.left_mults)), A.dim, m.dim, p)
    space = la.kernel(cons, p) if cons.shape[0] else Subspace.full(A.dim * m.dim, p)
    mats = [row.reshape(A.dim, m.dim) for row in space.basis]
    coords = lambda F: space.coordinates(F.reshape(-1))
    L = [np.array([coords(F @ rb % p) for F in mats], dtype=DTYPE).T.reshape(space.dim, space.dim)
         for rb in m.right_actions]
    R = [np.array([coords(ra @ F % p) for F in mats], dtype=DTYPE).T.reshape(space.dim, space.dim)
         for ra in A.right_mults]
    carrier = Bimodule(m.right, A, L, R, name=f"*{m.name}")
    return HomSpace(m, "left", space, carrier)


def endomorphisms(m: Bimodule, sides=("right",)) -> Subspace:
    """Endomorphisms commuting with the chosen actions, as flattened matrices."""
    pairs = []
    if "left" in sides:
        pairs += [(x, x) for x in m.left_actions]
    if "right" in sides:
        pairs += [(x, x) for x in m.right_actions]
    cons = _linear_constraints(pairs, m.dim, m.dim, m.p)
    return la.kernel(cons, m.p) if cons.shape[0] else Subspace.full(m.dim * m.dim, m.p)


# ---------------------------------------------------------------------------
# rings and modules over a base algebra

@dataclass(frozen=True, eq=False)
class RingOver:
    """A ``B``-ring: a ``B``-bimodule with a bilinear, balanced multiplication.

    ``structure[i, j]`` is the product of basis elements ``r_i r_j``.
    No unit is assumed; associativity is checked, not enforced.
    """

    base: Algebra
    carrier: Bimodule
    structure: np.ndarray
    name: str = ""

    def __post_init__(self):
        r = self.carrier.dim
        c = np.array(self.structure, dtype=DTYPE).reshape(r, r, r) % self.p
        object.__setattr__(self, "structure", c)

    @property
    def p(self):
        return self.carrier.p

    @property
    def dim(self):
        return self.carrier.dim

    def basis(self, i):
        return _basis_vector(self.dim, i)

    def mul(self, x, y):
        return np.einsum("i,j,ijk->k", la.as_vector(x, self.p), la.as_vector(y, self.p), self.structure) % self.p

    def left_mult(self, x):
        return np.einsum("i,ijk->kj", la.as_vector(x, self.p), self.structure) % self.p

    def right_mult(self, x):
        return np.einsum("j,ijk->ki", la.as_vector(x, self.p), self.structure) % self.p

    @cached_property
    def raw_multiplication(self) -> np.ndarray:
        """``dim x dim^2`` matrix of the multiplication on raw ``R (x) R``."""
        r = self.dim
        return self.structure.reshape(r * r, r).T.copy()

    @cached_property
    def square(self) -> Tensor:
        return tensor(self.carrier, self.carrier)

    def multiplication_map(self) -> BimoduleMap:
        T = self.square
        induced_ = self.raw_multiplication @ T.sigma % self.p
        return BimoduleMap(T.carrier, self.carrier, induced_)

    def as_algebra(self) -> Algebra:
        return Algebra(self.structure, self.p, None, name=self.name)

    def forget_base(self) -> "RingOver":
        """The same ring over the ground field (a ``Z``-ring in the text's sense)."""
        if self.base.dim == 1 and self.base.same_as(Algebra.ground(self.p)):
            return self
        k = Algebra.ground(self.p)
        car = Bimodule(k, k, [la.identity(self.dim)], [la.identity(self.dim)], name=self.carrier.name)
        return RingOver(k, car, self.structure, name=self.name)

    def centralizer(self) -> Subspace:
        """``R^B = {r : b r = r b}`` (imposed on the basis of ``B``)."""
        rows = [(l - r) % self.p for l, r in zip(self.carrier.left_actions, self.carrier.right_actions)]
        if not rows:
            return Subspace.full(self.dim, self.p)
        return la.kernel(np.vstack(rows), self.p)

    def is_idempotent(self, x) -> bool:
        return la.equal(self.mul(x, x), x, self.p)

    def find_unit(self):
        alg = self.as_algebra()
        return alg.find_unit()

    @classmethod
    def from_algebra(cls, alg: Algebra, base: Algebra | None = None) -> "RingOver":
        """An algebra as a ring over the ground field (default) or over itself."""
        if base is None:
            k = Algebra.ground(alg.p)
            car = Bimodule(k, k, [la.identity(alg.dim)], [la.identity(alg.dim)], name=alg.name)
            return cls(k, car, alg.structure, name=alg.name)
        if not base.same_as(alg):
            raise ValueError("only the ground field or the algebra itself are supported as base here")
        return cls(alg, alg.regular, alg.structure, name=alg.name)

    def __repr__(self):
        return f"RingOver({self.name or '?'}, dim={self.dim}, base={self.base.name})"


def check_ring_over(r: RingOver) -> Report:
    """Itemised check of the ``B``-ring axioms."""
    rep = Report(f"ring {r.name or '?'}")
    p = r.p
    car = r.carrier
    rep.add("carrier bimodule", car.check().ok and car.left.same_as(r.base) and car.right.same_as(r.base))
    M = r.raw_multiplication
    T = r.square
    rep.add("balanced over base", not ((M - M @ T.sigma @ T.pi) % p).any())
    I = la.identity(r.dim)
    rep.add("left base-linear", all(la.equal(l @ M, M @ np.kron(l, I), p) for l in car.left_actions))
    rep.add("right base-linear", all(la.equal(x @ M, M @ np.kron(I, x), p) for x in car.right_actions))
    bad = r.as_algebra().associativity_failure()
    rep.add("associative", bad is None, detail=None if bad is None else {"triple": bad})
    return rep


@dataclass(frozen=True, eq=False)
class ModuleOver:
    """A (right or left) module over a ``B``-ring, one action matrix per ring basis element.

    Right: ``actions[k] @ m == m . r_k``.  Left: ``actions[k] @ m == r_k . m``.
    The carrier's right (resp. left) algebra is the base ``B``.
    """

    ring: RingOver
    carrier: Bimodule
    actions: tuple
    side: str = "right"

    def __post_init__(self):
        if self.side not in ("right", "left"):
            raise ValueError("side must be 'right' or 'left'")
        acts = tuple(la.as_matrix(a, self.p) for a in self.actions)
        if len(acts) != self.ring.dim:
            raise AxiomError("shape", message="one action matrix per ring basis element is required")
        object.__setattr__(self, "actions", acts)

    @property
    def p(self):
        return self.carrier.p

    @property
    def dim(self):
        return self.carrier.dim

    def act(self, r) -> np.ndarray:
        r = la.as_vector(r, self.p)
        if not self.actions:
            return la.zeros(self.dim, self.dim)
        return np.tensordot(r, np.array(self.actions), axes=1) % self.p

    def apply(self, r, m) -> np.ndarray:
        return self.act(r) @ la.as_vector(m, self.p) % self.p

    @cached_property
    def base_actions(self):
        return self.carrier.right_actions if self.side == "right" else self.carrier.left_actions

    def check(self) -> Report:
        rep = Report(f"{self.side} module over {self.ring.name or '?'}")
        p, R = self.p, self.ring
        base = self.carrier.right if self.side == "right" else self.carrier.left
        rep.add("carrier acted on by base", base.same_as(R.base))
        assoc = True
        for i in range(R.dim):
            for j in range(R.dim):
                lhs = self.act(R.mul(R.basis(i), R.basis(j)))
                rhs = self.actions[j] @ self.actions[i] if self.side == "right" else self.actions[i] @ self.actions[j]
                assoc &= la.equal(lhs, rhs % p, p)
        rep.add("associative action", assoc)
        if base.same_as(R.base):
            bal, lin = True, True
            for b in range(R.base.dim):
                Lb, Rb = R.carrier.left_actions[b], R.carrier.right_actions[b]
                Mb = self.base_actions[b]
                for k in range(R.dim):
                    rk = R.basis(k)
                    if self.side == "right":
                        bal &= la.equal(self.actions[k] @ Mb % p, self.act(Lb @ rk), p)
                        lin &= la.equal(Mb @ self.actions[k] % p, self.act(Rb @ rk), p)
                    else:
                        bal &= la.equal(self.actions[k] @ Mb % p, self.act(Rb @ rk), p)
                        lin &= la.equal(Mb @ self.actions[k] % p, self.act(Lb @ rk), p)
            rep.add("balanced over base", bal)
            rep.add("base-linear", lin)
        return rep

    def validate(self) -> "ModuleOver":
        rep = self.check()
        if not rep.ok:
            raise AxiomError(rep.failures[0])
        return self

    def forget_base(self) -> "ModuleOver":
        car = self.carrier.restrict_right_to_ground() if self.side == "right" else \
            self.carrier.restrict_left_to_ground()
        return ModuleOver(self.ring.forget_base(), car, self.actions, self.side)

    def raw_action(self) -> np.ndarray:
        """``dim(M) x dim(M) dim(R)`` (right) or ``dim(M) x dim(R) dim(M)`` (left) raw action."""
        d, r = self.dim, self.ring.dim
        out = np.zeros((d, d * r), dtype=DTYPE)
        for i in range(d):
            for k in range(r):
                col = self.actions[k][:, i]
                out[:, i * r + k if self.side == "right" else k * d + i] = col
        return out

    @classmethod
    def regular(cls, ring: RingOver, side: str = "right") -> "ModuleOver":
        acts = [ring.right_mult(ring.basis(k)) if side == "right" else ring.left_mult(ring.basis(k))
                for k in range(ring.dim)]
        return cls(ring, ring.carrier, acts, side)

    def __repr__(self):
        return f"ModuleOver({self.side}, dim={self.dim}, ring={self.ring.name or '?'})"


def dual_basis_exists(m: Bimodule, side: str = "right") -> bool:
    """Is ``m`` finitely generated projective over its right (left) algebra?

    Solves directly for coefficients ``X[a, i]`` with
    ``x = sum_{a,i} X[a,i] m_a f_i(x)`` for every basis vector ``x``,
    where ``f_i`` runs over a basis of the dual.
    """
    if side == "left":
        return dual_basis_exists(m.opposite(), "right")
    A, p = m.right, m.p
    if A.unit is None:
        return False
    H = hom_right(m)
    F = H.basis_matrices()
    d = m.dim
    if d == 0:
        return True
    if not F:
        return False
    cols = []
    for a in range(d):
        for f in F:
            # column for unknown X[a, i]: the vector over all c of m_a . f_i(m_c)
            block = np.concatenate([m.act_right(f[:, c]) @ _basis_vector(d, a) % p for c in range(d)])
            cols.append(block)
    system = np.array(cols, dtype=DTYPE).T
    try:
        la.solve_affine(system, la.identity(d).T.reshape(-1), p)
    except Infeasible:
        return False
    return True
