"""
Seeded random instances.

Algebras are products of small matrix subalgebras with a random change of
basis, so associativity holds by construction.  Corings come from the
comatrix and Dorroh constructions and from grouplike families.
"""

from __future__ import annotations

import numpy as np

from .. import exactla as la
from .. import library
from ..algebras import Algebra, Bimodule
from ..corings import PreCoring, comatrix_coring, dorroh_coring, grouplike_coring
from ..dual_pairs import DualPair, ElementaryRing
from ..exactla import DTYPE
from .instance import Instance, add_structure

KINDS = ("algebra", "bimodule", "dual_pair", "coring", "precoring")


def _blocks(p):
    """Building blocks keyed by dimension."""
    upper = Algebra.from_matrices([[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [0, 1]]], p, name="T2")
    return {
        1: [Algebra.ground(p), Algebra.zero_product(1, p)],
        2: [Algebra.diagonal(2, p), Algebra.truncated_polynomial(2, p), Algebra.from_matrices([[[1, 0], [0, 0]], [[0, 1], [0, 0]]], p, name="R_row")],
        3: [upper, Algebra.truncated_polynomial(3, p), Algebra.diagonal(3, p)],
        4: [Algebra.matrix_algebra(2, p)],
    }


def _invertible(rng, n, p):
    while True:
        P = rng.integers(0, p, size=(n, n))
        if la.rank(P, p) == n:
            return P.astype(DTYPE)


def _inverse(P, p):
    n = P.shape[0]
    cols = [la.solve_affine(P, la.identity(n)[:, j], p).particular for j in range(n)]
    return np.array(cols, dtype=DTYPE).T


def change_basis(alg: Algebra, P, name: str = "") -> Algebra:
    """Structure constants in the basis given by the columns of ``P``."""
    p = alg.p
    Pinv = _inverse(P, p)
    c = np.einsum("ai,bj,abk,lk->ijl", P, P, alg.structure, Pinv) % p
    unit = None if alg.unit is None else Pinv @ alg.unit % p
    return Algebra(c, p, unit, name=name or alg.name)


def random_algebra(rng, dim: int, p: int = 2, unital: bool | None = None) -> Algebra:
    """A product of blocks with total dimension ``dim``, in a random basis."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    blocks = _blocks(p)
    parts, left = [], dim
    while left:
        size = int(rng.integers(1, min(left, 4) + 1))
        choices = blocks[size]
        if unital:
            choices = [a for a in choices if a.unit is not None]
        parts.append(choices[int(rng.integers(0, len(choices)))])
        left -= size
    alg = parts[0] if len(parts) == 1 else Algebra.product(*parts)
    if unital and alg.unit is None:
        alg = alg.with_unit()
    out = change_basis(alg, _invertible(rng, dim, p), name=f"A{dim}")
    return out.with_unit()


def random_module(rng, A: Algebra, max_dim: int = 3) -> Bimodule:
    """A right ``A``-module (left ground): a cyclic submodule of a free module, or a free module."""
    p = A.p
    n = max(1, max_dim // A.dim)
    free = library.free_module(A, n)
    v = rng.integers(0, p, size=free.dim)
    if not v.any():
        v[0] = 1
    span = [v % p]
    sub = la.Subspace.span(span, free.dim, p)
    while True:
        grown = la.Subspace.span(
            np.vstack([sub.basis] + [(R @ sub.basis.T % p).T for R in free.right_actions]), free.dim, p)
        if grown.dim == sub.dim:
            break
        sub = grown
    if A.unit is None:
        sub = la.Subspace.span(np.vstack([sub.basis, v[None, :]]), free.dim, p)
    if sub.dim > max_dim or not free.is_invariant(sub, sides=("right",)):
        return free if free.dim <= max_dim else library.free_module(A, 1)
    M, _ = free.submodule(sub, sides=("right",))
    return Bimodule(M.left, M.right, M.left_actions, M.right_actions, name=f"M{M.dim}")


BASES = ("k", "kxk", "m2")


def _unital_base(rng, p, base=None):
    if base is not None:
        return {"k": Algebra.ground, "kxk": library.kxk, "m2": library.m2}[base](p)
    choices = [Algebra.ground(p), Algebra.diagonal(2, p), Algebra.matrix_algebra(2, p)]
    weights = np.array([0.45, 0.4, 0.15])
    return choices[int(rng.choice(len(choices), p=weights))]


def _projective(rng, dim, p, base=None):
    """A f.g. projective right module of dimension at most ``dim`` over k, k x k or M2."""
    A = _unital_base(rng, p, base)
    if A.dim == 4:
        return library.row_vectors(p)
    n = max(1, min(dim, 3))
    if A.dim == 1:
        return Bimodule.vector_space(n, p)
    # over k x k: sums of the two simple projectives
    pieces = [int(rng.integers(0, 2)) for _ in range(n)]
    acts = [np.diag([int(j == t) for j in pieces]).astype(DTYPE) for t in range(2)]
    return Bimodule.right_module(A, acts, name=f"P{n}")


def random_precoring(rng, dim: int, p: int = 2) -> PreCoring:
    """A coassociative comultiplication on ``k^dim`` that has no counit."""
    kind = int(rng.integers(0, 3))
    if kind == 0:
        V = Bimodule.vector_space(dim, p)
        return PreCoring(V, np.zeros((dim * dim, dim), dtype=DTYPE), None, name=f"null{dim}")
    if kind == 1:
        support = [i for i in range(dim) if rng.integers(0, 2)]
        if len(support) == dim:
            support = support[:-1]
        g = grouplike_coring(dim, p, support)
        return PreCoring(g.carrier, g.delta, None, name=f"grouplike{dim}_{''.join(map(str, support))}")
    # comatrix comultiplication of a non-unit central element
    M = Bimodule.vector_space(max(1, min(dim, 2)), p)
    pair = DualPair.canonical(M)
    S = ElementaryRing(pair)
    while True:
        e = rng.integers(0, p, size=S.dim)
        if not la.equal(S.Phi(e), la.identity(M.dim), p):
            break
    c = comatrix_coring(pair, e, require_counit=False).coring
    return PreCoring(c.carrier, c.delta, None, name=f"comatrix{c.dim}")


VARIANTS = {
    "dual_pair": ("canonical", "zero", "module", "regular"),
    "coring": ("comatrix", "dorroh", "grouplike"),
}


def _pick(rng, kind, variant):
    options = VARIANTS[kind]
    if variant is None:
        return options[int(rng.integers(0, len(options)))]
    if variant not in options:
        raise ValueError(f"unknown {kind} variant {variant!r} (expected one of {', '.join(options)})")
    return variant


def generate(kind: str, seed: int, dim: int = 2, p: int = 2, variant: str | None = None,
             base: str | None = None) -> Instance:
    """Deterministic instance fragment for ``kind`` under ``seed``.

    ``variant`` fixes the construction for dual pairs and corings (random
    otherwise); ``base`` fixes the algebra of projective modules to one of
    ``k``, ``kxk``, ``m2``.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r} (expected one of {', '.join(KINDS)})")
    if dim < 1:
        raise ValueError("dimension must be positive")
    if base is not None and base not in BASES:
        raise ValueError(f"unknown base {base!r} (expected one of {', '.join(BASES)})")
    if variant is not None and kind not in VARIANTS:
        raise ValueError(f"{kind} has no variants")
    rng = np.random.default_rng(seed)
    inst = Instance(p)
    if kind == "algebra":
        add_structure(inst, "A", random_algebra(rng, dim, p))
    elif kind == "bimodule":
        A = random_algebra(rng, min(dim, 4), p, unital=True)
        add_structure(inst, "M", random_module(rng, A, max_dim=dim))
    elif kind == "dual_pair":
        choice = _pick(rng, kind, variant)
        if choice == "canonical":
            pair = DualPair.canonical(_projective(rng, dim, p, base))
        elif choice == "zero":
            M = _projective(rng, dim, p, base)
            pair = DualPair.zero(M, DualPair.canonical(M).Mp)
        elif choice == "module":
            A = random_algebra(rng, min(dim, 3), p, unital=True)
            pair = DualPair.canonical(random_module(rng, A, max_dim=3))
        else:
            pair = DualPair.regular(random_algebra(rng, min(dim, 3), p, unital=True))
        add_structure(inst, "P", pair, served=la.identity(pair.M.dim))
    elif kind == "coring":
        choice = _pick(rng, kind, variant)
        if choice == "comatrix":
            c = comatrix_coring(_projective(rng, dim, p, base)).coring
        elif choice == "dorroh":
            c = dorroh_coring(random_precoring(rng, min(dim, 3), p)).coring
        else:
            c = grouplike_coring(dim, p)
        add_structure(inst, "C", c, counital=True)
    else:
        add_structure(inst, "C", random_precoring(rng, dim, p))
    return inst
