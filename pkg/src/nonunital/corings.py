"""
Corings with or without counit, comodules, the convolution ring, cotensor
products, comatrix corings built from a dual pair, and the Dorroh coring
that adjoins a counit.

A pre-coring over ``A`` is an ``A``-bimodule ``C`` with a coassociative
bimodule map ``Delta: C -> C (x)_A C``; ``epsilon: C -> A`` is optional and
need not be a counit.  ``Delta`` is stored on the quotient coordinates of
``tensor(C, C)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactla as la
from .algebras import Algebra, Bimodule, BimoduleMap, ModuleOver, RingOver, hom_left, induced, tensor
from .dual_pairs import DualPair, ElementaryRing, find_dual_basis
from .errors import AxiomError, Report
from .exactla import DTYPE, Subspace


def act_right_raw(m: Bimodule) -> np.ndarray:
    """``M (x) A -> M``, ``m (x) a -> m a`` on raw coordinates."""
    d, a = m.dim, m.right.dim
    out = np.zeros((d, d * a), dtype=DTYPE)
    for t, R in enumerate(m.right_actions):
        out[:, t::a] = R
    return out


def act_left_raw(m: Bimodule) -> np.ndarray:
    """``A (x) M -> M``, ``a (x) m -> a m`` on raw coordinates."""
    return np.hstack(m.left_actions) if m.left_actions else np.zeros((m.dim, 0), dtype=DTYPE)


@dataclass(frozen=True, eq=False)
class PreCoring:
    """``(C, Delta, epsilon)`` over ``A = C.left``; ``epsilon`` may be missing or fail the counit laws."""

    carrier: Bimodule
    delta: np.ndarray
    epsilon: np.ndarray | None = None
    name: str = ""

    def __post_init__(self):
        p = self.carrier.p
        d = np.array(self.delta, dtype=DTYPE).reshape(self.square.dim, self.dim) % p
        object.__setattr__(self, "delta", d)
        if self.epsilon is not None:
            e = np.array(self.epsilon, dtype=DTYPE).reshape(self.A.dim, self.dim) % p
            object.__setattr__(self, "epsilon", e)

    @property
    def A(self) -> Algebra:
        return self.carrier.left

    @property
    def p(self):
        return self.carrier.p

    @property
    def dim(self):
        return self.carrier.dim

    @property
    def square(self):
        return tensor(self.carrier, self.carrier)

    @property
    def cube(self):
        return tensor(self.carrier, self.carrier, self.carrier)

    @property
    def delta_raw(self) -> np.ndarray:
        return self.square.sigma @ self.delta % self.p

    def with_delta(self, delta, name: str = "") -> "PreCoring":
        return PreCoring(self.carrier, delta, self.epsilon, name or self.name)

    def with_epsilon(self, epsilon) -> "PreCoring":
        return PreCoring(self.carrier, self.delta, epsilon, self.name)

    def apply(self, c) -> np.ndarray:
        return self.delta @ la.as_vector(c, self.p) % self.p

    def __repr__(self):
        return f"PreCoring({self.name or '?'}, dim={self.dim}, A={self.A.name})"


# ---------------------------------------------------------------------------
# composites on tensor powers

def delta_left_composite(c: PreCoring, delta=None) -> np.ndarray:
    """``(Delta (x) C)``: ``C (x) C -> C (x) C (x) C``."""
    d = c.delta if delta is None else delta
    return induced(c.square, c.cube, [c.square.sigma @ d % c.p, la.identity(c.dim)])


def delta_right_composite(c: PreCoring, delta=None) -> np.ndarray:
    """``(C (x) Delta)``: ``C (x) C -> C (x) C (x) C``."""
    d = c.delta if delta is None else delta
    return induced(c.square, c.cube, [la.identity(c.dim), c.square.sigma @ d % c.p])


def right_contraction(c: PreCoring, eps=None) -> np.ndarray:
    """``C (x) eps``: ``C (x) C -> C``, ``x (x) y -> x eps(y)``."""
    e = c.epsilon if eps is None else eps
    if e is None:
        raise AxiomError("counit present", message="no epsilon given")
    raw = act_right_raw(c.carrier) @ np.kron(la.identity(c.dim), e) % c.p
    return _descend(raw, c.square, c.p)


def left_contraction(c: PreCoring, eps=None) -> np.ndarray:
    """``eps (x) C``: ``C (x) C -> C``, ``x (x) y -> eps(x) y``."""
    e = c.epsilon if eps is None else eps
    if e is None:
        raise AxiomError("counit present", message="no epsilon given")
    raw = act_left_raw(c.carrier) @ np.kron(e, la.identity(c.dim)) % c.p
    return _descend(raw, c.square, c.p)


def middle_contraction(c: PreCoring, eps=None) -> np.ndarray:
    """``C (x) eps (x) C``: ``C (x) C (x) C -> C (x) C``."""
    e = c.epsilon if eps is None else eps
    raw = np.kron(act_right_raw(c.carrier) @ np.kron(la.identity(c.dim), e), la.identity(c.dim)) % c.p
    return _descend(c.square.pi @ raw % c.p, c.cube, c.p)


def _descend(raw, src, p):
    if ((raw - raw @ src.sigma @ src.pi) % p).any():
        raise AxiomError("well-defined on the tensor product")
    return raw @ src.sigma % p


def check_coring(c: PreCoring, counital: bool | None = None) -> Report:
    """Bimodule-map property of ``Delta``/``epsilon``, coassociativity and the counit laws."""
    rep = Report(f"coring {c.name or '?'}")
    p = c.p
    rep.add("carrier bimodule", c.carrier.check().ok and c.carrier.right.same_as(c.A))
    rep.add("Delta bilinear", BimoduleMap(c.carrier, c.square.carrier, c.delta).check().ok)
    lhs = delta_left_composite(c) @ c.delta % p
    rhs = delta_right_composite(c) @ c.delta % p
    rep.add("coassociative", la.equal(lhs, rhs, p))
    if counital is None:
        counital = c.epsilon is not None
    if counital:
        if c.epsilon is None:
            rep.add("counit present", False)
            return rep
        rep.add("epsilon bilinear", BimoduleMap(c.carrier, c.A.regular, c.epsilon).check().ok)
        I = la.identity(c.dim)
        rep.add("right counit law", la.equal(right_contraction(c) @ c.delta % p, I, p))
        rep.add("left counit law", la.equal(left_contraction(c) @ c.delta % p, I, p))
    return rep


def is_coassociative(c: PreCoring) -> bool:
    return la.equal(delta_left_composite(c) @ c.delta, delta_right_composite(c) @ c.delta, c.p)


def check_coring_morphism(f, c: PreCoring, d: PreCoring) -> Report:
    """Is ``f: C -> D`` bilinear, comultiplicative and (when both have one) counit-preserving?"""
    f = la.as_matrix(f, c.p)
    rep = Report("coring morphism")
    p = c.p
    rep.add("bilinear", BimoduleMap(c.carrier, d.carrier, f).check().ok)
    ff = induced(c.square, d.square, [f, f])
    rep.add("comultiplicative", la.equal(d.delta @ f % p, ff @ c.delta % p, p))
    if c.epsilon is not None and d.epsilon is not None:
        rep.add("counit preserving", la.equal(d.epsilon @ f % p, c.epsilon, p))
    return rep


# ---------------------------------------------------------------------------
# comodules

@dataclass(frozen=True, eq=False)
class Comodule:
    """A right (``rho: M -> M (x) C``) or left (``rho: M -> C (x) M``) comodule."""

    coring: PreCoring
    carrier: Bimodule
    coaction: np.ndarray
    side: str = "right"
    counital: bool = False

    def __post_init__(self):
        if self.side not in ("right", "left"):
            raise ValueError("side must be 'right' or 'left'")
        rho = np.array(self.coaction, dtype=DTYPE).reshape(self.tensor.dim, self.carrier.dim) % self.p
        object.__setattr__(self, "coaction", rho)

    @property
    def p(self):
        return self.carrier.p

    @property
    def dim(self):
        return self.carrier.dim

    @property
    def tensor(self):
        C = self.coring.carrier
        return tensor(self.carrier, C) if self.side == "right" else tensor(C, self.carrier)

    @property
    def double(self):
        C = self.coring.carrier
        return tensor(self.carrier, C, C) if self.side == "right" else tensor(C, C, self.carrier)

    def coaction_composites(self):
        """Both sides of the coassociativity law as matrices ``M -> M (x) C (x) C`` (or mirrored)."""
        c, p = self.coring, self.p
        T, TT = self.tensor, self.double
        rho_raw = T.sigma @ self.coaction % p
        Id_M, Id_C = la.identity(self.dim), la.identity(c.dim)
        if self.side == "right":
            a = induced(T, TT, [rho_raw, Id_C]) @ self.coaction
            b = induced(T, TT, [Id_M, c.delta_raw]) @ self.coaction
        else:
            a = induced(T, TT, [Id_C, rho_raw]) @ self.coaction
            b = induced(T, TT, [c.delta_raw, Id_M]) @ self.coaction
        return a % p, b % p

    def counit_map(self, eps=None) -> np.ndarray:
        """``(M (x) eps) o rho`` (right) or ``(eps (x) M) o rho`` (left)."""
        e = self.coring.epsilon if eps is None else eps
        p = self.p
        if self.side == "right":
            raw = act_right_raw(self.carrier) @ np.kron(la.identity(self.dim), e)
        else:
            raw = act_left_raw(self.carrier) @ np.kron(e, la.identity(self.dim))
        return _descend(raw % p, self.tensor, p) @ self.coaction % p

    def check(self) -> Report:
        rep = Report(f"{self.side} comodule")
        p = self.p
        tgt = self.tensor.carrier
        if self.side == "right":
            ok = all(la.equal(self.coaction @ a % p, b @ self.coaction % p, p)
                     for a, b in zip(self.carrier.right_actions, tgt.right_actions))
        else:
            ok = all(la.equal(self.coaction @ a % p, b @ self.coaction % p, p)
                     for a, b in zip(self.carrier.left_actions, tgt.left_actions))
        rep.add("A-linear coaction", ok)
        a, b = self.coaction_composites()
        rep.add("coassociative", la.equal(a, b, p))
        if self.counital:
            ok = self.coring.epsilon is not None and la.equal(self.counit_map(), la.identity(self.dim), p)
            rep.add("counital", ok)
        return rep

    def validate(self) -> "Comodule":
        rep = self.check()
        if not rep.ok:
            raise AxiomError(rep.failures[0], where=f"{self.side} comodule")
        return self

    def module_over_dual(self, ring: "ConvolutionRing | None" = None) -> ModuleOver:
        """A right comodule as a right module over ``*C``: ``m . f = (M (x) f)(rho(m))``."""
        if self.side != "right":
            raise ValueError("only right comodules become right modules over the left dual")
        cr = ring or dual_ring(self.coring)
        acts = [self.counit_map(F) for F in cr.hom.basis_matrices()]
        return ModuleOver(cr.ring, self.carrier, acts, "right")

    @classmethod
    def regular(cls, c: PreCoring, side: str = "right", counital: bool = False) -> "Comodule":
        return cls(c, c.carrier, c.delta, side, counital)


def colinear_maps(m: Comodule, n: Comodule) -> Subspace:
    """Right ``A``-linear colinear maps ``M -> N`` as flattened ``dim N x dim M`` matrices."""
    if m.side != n.side:
        raise ValueError("comodules on different sides")
    p = m.p
    dm, dn = m.dim, n.dim
    c = m.coring
    cols = []
    acts_m = m.carrier.right_actions if m.side == "right" else m.carrier.left_actions
    acts_n = n.carrier.right_actions if m.side == "right" else n.carrier.left_actions
    Id_C = la.identity(c.dim)
    for i in range(dn):
        for j in range(dm):
            E = np.zeros((dn, dm), dtype=DTYPE)
            E[i, j] = 1
            pieces = [E, Id_C] if m.side == "right" else [Id_C, E]
            fc = induced(m.tensor, n.tensor, pieces)
            colin = (n.coaction @ E - fc @ m.coaction) % p
            lin = [(E @ a - b @ E) % p for a, b in zip(acts_m, acts_n)]
            cols.append(np.concatenate([colin.reshape(-1)] + [x.reshape(-1) for x in lin]))
    if not cols:
        return Subspace.zero(dn * dm, p)
    return la.kernel(np.array(cols, dtype=DTYPE).T, p)


def is_colinear(f, m: Comodule, n: Comodule) -> bool:
    f = la.as_matrix(f, m.p).reshape(n.dim, m.dim)
    pieces = [f, la.identity(m.coring.dim)] if m.side == "right" else [la.identity(m.coring.dim), f]
    fc = induced(m.tensor, n.tensor, pieces)
    return la.equal(n.coaction @ f % m.p, fc @ m.coaction % m.p, m.p)


def cotensor(m: Comodule, n: Comodule) -> Subspace:
    """``M (x)^C N``: equaliser of ``rho_M (x) N`` and ``M (x) rho_N`` inside ``M (x)_A N``."""
    if m.side != "right" or n.side != "left":
        raise ValueError("cotensor needs a right and a left comodule")
    for x in (m, n):
        rep = x.check()
        if not rep.checks.get("coassociative", False) or not rep.checks.get("A-linear coaction", False):
            raise AxiomError("coaction validity", where=f"{x.side} comodule")
    c, p = m.coring, m.p
    src = tensor(m.carrier, n.carrier)
    tgt = tensor(m.carrier, c.carrier, n.carrier)
    left = induced(src, tgt, [m.tensor.sigma @ m.coaction % p, la.identity(n.dim)])
    right = induced(src, tgt, [la.identity(m.dim), n.tensor.sigma @ n.coaction % p])
    return la.kernel((left - right) % p, p)


# ---------------------------------------------------------------------------
# convolution ring

@dataclass(frozen=True, eq=False)
class ConvolutionRing:
    """``*C = Hom_A(C, A)`` (left linear) with ``(f * g)(c) = g(c_(1) f(c_(2)))``."""

    coring: PreCoring
    hom: object
    ring: RingOver
    unit: np.ndarray | None

    @property
    def dim(self):
        return self.ring.dim

    def functional(self, coords) -> np.ndarray:
        return self.hom.matrix(coords)

    def coords(self, F) -> np.ndarray:
        return self.hom.coords(F)

    def contains(self, F) -> bool:
        return self.hom.contains(F)

    def product_matrix(self, F, G) -> np.ndarray:
        c, p = self.coring, self.coring.p
        inner = act_right_raw(c.carrier) @ np.kron(la.identity(c.dim), F) % p
        return G @ inner @ c.delta_raw % p

    def mul(self, f, g) -> np.ndarray:
        return self.ring.mul(f, g)


def dual_ring(c: PreCoring, delta=None) -> ConvolutionRing:
    """The left dual ``*C`` as a ring over ``A`` (unit ``epsilon`` when it is a counit)."""
    if delta is not None:
        c = c.with_delta(delta)
    if c.A.unit is None:
        raise AxiomError("unital algebra", message="the left dual needs a unital base algebra")
    H = hom_left(c.carrier)
    p = c.p
    mats = H.basis_matrices()
    n = len(mats)
    struct = np.zeros((n, n, n), dtype=DTYPE)
    inner = [act_right_raw(c.carrier) @ np.kron(la.identity(c.dim), F) % p for F in mats]
    for i in range(n):
        for j in range(n):
            struct[i, j] = H.coords(mats[j] @ inner[i] @ c.delta_raw % p)
    ring = RingOver(c.A, H.carrier, struct, name=f"*{c.name}")
    unit = None
    if c.epsilon is not None and H.contains(c.epsilon):
        u = H.coords(c.epsilon)
        if la.equal(ring.left_mult(u), la.identity(n), p) and la.equal(ring.right_mult(u), la.identity(n), p):
            unit = u
    return ConvolutionRing(c, H, ring, unit)


# ---------------------------------------------------------------------------
# constructions

def grouplike_coring(n: int, p: int = 2, support=None) -> PreCoring:
    """``k^n`` with ``Delta(e_i) = e_i (x) e_i`` for ``i`` in ``support`` (default all), ``eps(e_i) = 1``."""
    V = Bimodule.vector_space(n, p, name=f"k^{n}")
    support = range(n) if support is None else support
    delta = np.zeros((n * n, n), dtype=DTYPE)
    for i in support:
        delta[i * n + i, i] = 1
    return PreCoring(V, delta, np.ones((1, n), dtype=DTYPE), name=f"grouplike{n}")


def trivial_coring(A: Algebra) -> PreCoring:
    """``A`` as a coring over itself: ``Delta(a) = 1 (x) a``, ``eps = id``."""
    if A.unit is None:
        raise AxiomError("unital algebra")
    T = tensor(A.regular, A.regular)
    raw = np.kron(A.unit.reshape(-1, 1), la.identity(A.dim))
    return PreCoring(A.regular, T.pi @ raw % A.p, la.identity(A.dim), name=A.name)


@dataclass(frozen=True, eq=False)
class ComatrixCoring:
    """``C = M' (x)_B M`` with ``Delta(m' (x) m) = m' (x) e (x) m`` and ``eps = mu``."""

    pair: DualPair
    element: np.ndarray
    coring: PreCoring
    right_comodule: Comodule
    left_comodule: Comodule


def comatrix_coring(source, element=None, require_counit: bool = True) -> ComatrixCoring:
    """Comatrix coring of a dual pair and a central element ``e`` of ``S = M (x)_A M'``.

    ``source`` is a :class:`DualPair` or a bimodule ``M`` (canonical pair
    ``(M, M^*)``).  Without ``element`` a ``B``-linear dual basis for all of
    ``M`` is searched, which makes the coring counital.  ``M`` carries the
    right coaction ``m -> e (x) m`` and ``M'`` the left coaction
    ``m' -> m' (x) e``.
    """
    pair = source if isinstance(source, DualPair) else DualPair.canonical(source)
    p = pair.p
    M, Mp = pair.M, pair.Mp
    S = ElementaryRing(pair)
    if element is None:
        cert = find_dual_basis(pair, la.identity(M.dim), require_b_linear=True)
        element = cert.element
    e = la.as_vector(element, p)
    car = S.ring.carrier
    if not all(la.equal(l @ e % p, r @ e % p, p) for l, r in zip(car.left_actions, car.right_actions)):
        raise AxiomError("centrality", message="element is not central over B")
    if require_counit and not la.equal(S.Phi(e), la.identity(M.dim), p):
        raise AxiomError("dual basis", message="element does not act as the identity on M")
    E = S.tensor.lift(e).reshape(M.dim, Mp.dim)
    Tc = tensor(Mp, M)
    dC = Tc.dim
    P = Tc.pi.reshape(dC, Mp.dim, M.dim)
    C = Tc.carrier
    T2 = tensor(C, C)
    raw = np.einsum("xac,cd,ydb->xyab", P, E, P) % p
    delta = _descend(T2.pi @ raw.reshape(dC * dC, Mp.dim * M.dim) % p, Tc, p)
    eps = _descend(pair.G.reshape(pair.A.dim, -1), Tc, p)
    coring = PreCoring(C, delta, eps, name=f"comatrix{pair.name}")
    rho_raw = np.einsum("cd,ydb->cyb", E, P).reshape(M.dim * dC, M.dim) % p
    rho = Comodule(coring, M, tensor(M, C).pi @ rho_raw % p, "right", counital=require_counit)
    lam_raw = np.einsum("xac,cd->xda", P, E).reshape(dC * Mp.dim, Mp.dim) % p
    lam = Comodule(coring, Mp, tensor(C, Mp).pi @ lam_raw % p, "left", counital=require_counit)
    return ComatrixCoring(pair, e, coring, rho, lam)


@dataclass(frozen=True, eq=False)
class DorrohCoring:
    """``C x A`` with counit ``(c, a) -> a`` and the maps relating it to ``C`` and ``A``."""

    base: PreCoring
    coring: PreCoring
    projection: np.ndarray
    inclusion: np.ndarray
    embedding: np.ndarray

    @property
    def p(self):
        return self.base.p

    def hat(self, m: Comodule) -> Comodule:
        """``m -> m_[0] (x) (m_[1], 0) + m (x) (0, 1)``."""
        if m.side != "right":
            raise ValueError("right comodules only")
        p = self.p
        Ch = self.coring
        T_old, T_new = m.tensor, tensor(m.carrier, Ch.carrier)
        push = induced(T_old, T_new, [la.identity(m.dim), self.embedding])
        unit = self.inclusion @ self.base.A.unit % p
        raw = np.kron(la.identity(m.dim), unit.reshape(-1, 1))
        rho = (push @ m.coaction + T_new.pi @ raw) % p
        return Comodule(Ch, m.carrier, rho, "right", counital=True)

    def unhat(self, m: Comodule) -> Comodule:
        """``(M (x) pi) o rho``."""
        T_old = tensor(m.carrier, self.base.carrier)
        pull = induced(m.tensor, T_old, [la.identity(m.dim), self.projection])
        return Comodule(self.base, m.carrier, pull @ m.coaction % self.p, "right")

    def coideal(self) -> Subspace:
        """Image of ``C x 0``."""
        return la.image(self.embedding, self.p)

    def check_coideal(self) -> Report:
        """``C x 0`` is a coideal; ``Delta(C x 0)`` is not inside ``(C x 0) (x) (C x 0)``."""
        rep = Report("coideal")
        p = self.p
        Ch = self.coring
        T = Ch.square
        D = self.coideal()
        I = la.identity(Ch.dim)
        mixed = [T.pure(x, d) for x in I for d in D.basis] + [T.pure(d, x) for x in I for d in D.basis]
        inner = [T.pure(d, d2) for d in D.basis for d2 in D.basis]
        image = [Ch.apply(d) for d in D.basis]
        big = Subspace.span(mixed, T.dim, p)
        small = Subspace.span(inner, T.dim, p)
        rep.add("epsilon vanishes", not (Ch.epsilon @ D.basis.T % p).any())
        rep.add("Delta lands in C^ (x) D + D (x) C^", all(big.contains(v) for v in image))
        not_sub = not all(small.contains(v) for v in image)
        rep.details["not a subcoring"] = not_sub
        if D.dim:
            rep.add("not a subcoring", not_sub)
        return rep


def dorroh_coring(c: PreCoring) -> DorrohCoring:
    """Adjoin a counit: ``C x A`` with ``Delta(c, a) = (c1, 0)(x)(c2, 0) + (0,1)(x)(c,a) + (c,a)(x)(0,1) - (0,a)(x)(0,1)``."""
    A, p = c.A, c.p
    if A.unit is None:
        raise AxiomError("unital algebra")
    if not is_coassociative(c):
        raise AxiomError("coassociative")
    dC, dA = c.dim, A.dim
    n = dC + dA
    car = c.carrier.direct_sum(A.regular)
    car = Bimodule(A, A, car.left_actions, car.right_actions, name=f"{c.name}xA")
    inC = np.vstack([la.identity(dC), la.zeros(dA, dC)])
    inA = np.vstack([la.zeros(dC, dA), la.identity(dA)])
    P_C = np.hstack([la.identity(dC), la.zeros(dC, dA)])
    P_A = np.hstack([la.zeros(dA, dC), la.identity(dA)])
    u = (inA @ A.unit % p).reshape(-1, 1)
    T = tensor(car, car)
    raw = (np.kron(inC, inC) @ c.delta_raw @ P_C
           + np.kron(u, la.identity(n)) + np.kron(la.identity(n), u)
           - np.kron(inA @ P_A, u)) % p
    hat = PreCoring(car, T.pi @ raw % p, P_A, name=f"{c.name}^")
    return DorrohCoring(c, hat, P_C, inA, inC)


def swap_matrix(n: int) -> np.ndarray:
    """``x (x) y -> y (x) x`` on ``k^n (x) k^n``."""
    out = np.zeros((n * n, n * n), dtype=DTYPE)
    for i in range(n):
        for j in range(n):
            out[j * n + i, i * n + j] = 1
    return out


def is_cocommutative(c: PreCoring) -> bool:
    """Only meaningful over the ground field, where ``C (x) C`` has no relations."""
    if c.A.dim != 1:
        raise ValueError("cocommutativity is checked over the ground field only")
    return la.equal(swap_matrix(c.dim) @ c.delta % c.p, c.delta, c.p)
