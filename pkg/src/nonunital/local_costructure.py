"""
Local comultiplications, local counits and local multiplications.

Throughout, ``c`` is a :class:`PreCoring` whose ``epsilon`` is a fixed
bimodule map ``C -> A`` (not necessarily a counit) and whose own ``delta`` is
only one of possibly many comultiplications.  A comultiplication is a matrix
``C -> C (x)_A C`` on quotient coordinates; a multiplication on a
``B``-bimodule ``R`` is a matrix ``R (x)_B R -> R``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactla as la
from .algebras import Algebra, Bimodule, BimoduleMap, ModuleOver, RingOver, induced, tensor
from .corings import (
    Comodule,
    ConvolutionRing,
    PreCoring,
    comatrix_coring,
    cotensor,
    delta_left_composite,
    delta_right_composite,
    dual_ring,
    left_contraction,
    middle_contraction,
    right_contraction,
    trivial_coring,
)
from .dual_pairs import DualPair, ElementaryRing
from .errors import AxiomError, BudgetExceeded, Infeasible, Report
from .exactla import DTYPE, Subspace
from .local_units import (
    DEFAULT_BUDGET,
    LocalUnitCertificate,
    find_idempotent_local_unit,
    find_local_unit,
    unit_solutions,
)

SIDES = ("right", "left", "two-sided")


def _rows(vectors, dim):
    return la.as_rows(vectors, dim)


def projection(c: PreCoring, delta, side: str = "right") -> np.ndarray:
    """``(C (x) eps) o Delta`` (right) or ``(eps (x) C) o Delta`` (left)."""
    if side == "right":
        return right_contraction(c) @ delta % c.p
    if side == "left":
        return left_contraction(c) @ delta % c.p
    raise ValueError("side must be 'right' or 'left'")


# ---------------------------------------------------------------------------
# epsilon-comultiplications

@dataclass
class LocalComultCertificate:
    """A coassociative ``Delta`` whose ``epsilon``-contraction fixes every vector of ``served``."""

    delta: np.ndarray
    coring: PreCoring
    served: np.ndarray
    side: str = "right"
    idempotent: bool = False

    def projections(self) -> dict:
        sides = ("right", "left") if self.side == "two-sided" else (self.side,)
        return {s: projection(self.coring, self.delta, s) for s in sides}

    def check(self) -> Report:
        c, p = self.coring, self.coring.p
        rep = Report(f"{self.side} epsilon-comultiplication")
        rep.add("bilinear", BimoduleMap(c.carrier, c.square.carrier, self.delta).check().ok)
        rep.add("coassociative", la.equal(delta_left_composite(c, self.delta) @ self.delta,
                                          delta_right_composite(c, self.delta) @ self.delta, p))
        D = _rows(self.served, c.dim)
        for s, P in self.projections().items():
            rep.add(f"{s} counit law on served set", all(la.equal(P @ d % p, d, p) for d in D))
            if self.idempotent:
                rep.add(f"{s} projection idempotent", la.equal(P @ P % p, P, p))
        return rep

    def validate(self) -> "LocalComultCertificate":
        rep = self.check()
        if not rep.ok:
            raise AxiomError(rep.failures[0], where=f"{self.side} epsilon-comultiplication")
        return self


def check_eps_comult(c: PreCoring, delta, served, side: str = "right") -> LocalComultCertificate:
    """Validate ``delta`` as an ``epsilon``-comultiplication on ``served`` and compute the idempotent flag.

    Raises :class:`AxiomError` naming the first violated law.
    """
    if side not in SIDES:
        raise ValueError(f"unknown side {side!r}")
    delta = la.as_matrix(delta, c.p).reshape(c.square.dim, c.dim)
    cert = LocalComultCertificate(delta, c, _rows(served, c.dim), side).validate()
    cert.idempotent = all(la.equal(P @ P % c.p, P, c.p) for P in cert.projections().values())
    return cert


def coassociation(c: PreCoring, d1, d2) -> tuple[bool, bool]:
    """The two mixed identities ``(C (x) D1) D2 = (D2 (x) C) D1`` and ``(C (x) D2) D1 = (D1 (x) C) D2``."""
    p = c.p
    first = la.equal(delta_right_composite(c, d1) @ d2, delta_left_composite(c, d2) @ d1, p)
    second = la.equal(delta_right_composite(c, d2) @ d1, delta_left_composite(c, d1) @ d2, p)
    return first, second


def coassociate_check(c: PreCoring, d1, d2) -> bool:
    return all(coassociation(c, d1, d2))


def is_coassociative(c: PreCoring, delta) -> bool:
    return coassociation(c, delta, delta)[0]


def _cross_term(c: PreCoring, first, second) -> np.ndarray:
    """``(C (x) eps (x) C) o (second (x) C) o first``."""
    return middle_contraction(c) @ delta_left_composite(c, second) @ first % c.p


def _certified(c: PreCoring, delta) -> np.ndarray:
    if not is_coassociative(c, delta):
        raise AxiomError("coassociative", message="the combined comultiplication is not coassociative")
    return delta


def combine_right_comults(c: PreCoring, delta, delta_prime, literal: bool = False) -> np.ndarray:
    """Combine ``delta`` (serving a set) with ``delta_prime`` (serving the defects ``x - psi(x)``).

    The result is ``D + D' - (C (x) eps (x) C) o (D' (x) C) o D``, whose
    right projection is ``psi + psi' - psi' psi``, so it serves both sets.
    With ``literal`` the cross term is ``D' o (C (x) eps) o D`` instead;
    that has the same projection but can fail to be coassociative, in
    which case :class:`AxiomError` is raised.
    """
    if not coassociate_check(c, delta, delta_prime):
        raise AxiomError("coassociate", message="the two comultiplications do not coassociate")
    if literal:
        cross = delta_prime @ projection(c, delta, "right") % c.p
    else:
        cross = _cross_term(c, delta, delta_prime)
    return _certified(c, (delta + delta_prime - cross) % c.p)


def combine_left_right_comult(c: PreCoring, delta_left, delta_right) -> np.ndarray:
    """``D + D' - (C (x) eps (x) C) o (D' (x) C) o D`` for a left ``D`` and a right ``D'``."""
    if not coassociate_check(c, delta_left, delta_right):
        raise AxiomError("coassociate", message="the two comultiplications do not coassociate")
    return _certified(c, (delta_left + delta_right - _cross_term(c, delta_left, delta_right)) % c.p)


@dataclass(frozen=True, eq=False)
class ComultFamily:
    """A linear family ``x -> sum x_j Delta_j`` of comultiplications that pairwise coassociate."""

    coring: PreCoring
    basis: tuple
    name: str = ""

    @property
    def dim(self):
        return len(self.basis)

    def member(self, x) -> np.ndarray:
        c = self.coring
        out = np.zeros((c.square.dim, c.dim), dtype=DTYPE)
        for xi, D in zip(la.as_vector(x, c.p), self.basis):
            out = out + xi * D
        return out % c.p

    def check(self) -> Report:
        """Every member is bilinear and coassociative and any two members coassociate.

        Coassociation is bilinear in the pair, so testing the basis pairs
        decides it for the whole family.
        """
        rep = Report(f"comultiplication family {self.name}")
        c = self.coring
        rep.add("bilinear", all(BimoduleMap(c.carrier, c.square.carrier, D).check().ok for D in self.basis))
        ok = True
        for D1 in self.basis:
            for D2 in self.basis:
                ok &= coassociation(c, D1, D2)[0]
        rep.add("pairwise coassociating", ok)
        return rep

    def solutions(self, served, side: str = "right") -> la.AffineSet:
        """Parameters ``x`` whose member serves ``served``; raises :class:`Infeasible`."""
        c, p = self.coring, self.coring.p
        D = _rows(served, c.dim)
        sides = ("right", "left") if side == "two-sided" else (side,)
        blocks = []
        for s in sides:
            Ps = [projection(c, B, s) for B in self.basis]
            for d in D:
                cols = np.array([P @ d % p for P in Ps], dtype=DTYPE).reshape(self.dim, c.dim).T
                blocks.append((cols, d))
        if not blocks:
            return la.AffineSet(np.zeros(self.dim, dtype=DTYPE), Subspace.full(self.dim, p))
        return la.solve_stacked(blocks, p)

    def find(self, served, side: str = "right", idempotent: bool = False,
             budget: int = DEFAULT_BUDGET) -> LocalComultCertificate:
        """Lexicographically smallest member serving ``served`` (idempotent by scan)."""
        sol = self.solutions(served, side)
        if not idempotent:
            return check_eps_comult(self.coring, self.member(sol.lex_min()), served, side)
        for x in sol.members(budget):
            cert = check_eps_comult(self.coring, self.member(x), served, side)
            if cert.idempotent:
                return cert
        raise Infeasible("no idempotent member of the family serves the set")

    @classmethod
    def comatrix(cls, pair: DualPair) -> "ComultFamily":
        """``Delta_e(m' (x) m) = m' (x) e (x) m`` for ``e`` ranging over ``S^B``."""
        S = ElementaryRing(pair)
        car, p = S.ring.carrier, pair.p
        comm = [(l - r) % p for l, r in zip(car.left_actions, car.right_actions)]
        central = la.kernel(np.vstack(comm), p) if comm and S.ring.dim else Subspace.full(S.ring.dim, p)
        zero = comatrix_coring(pair, np.zeros(S.ring.dim, dtype=DTYPE), require_counit=False).coring
        basis = tuple(comatrix_coring(pair, e, require_counit=False).coring.delta for e in central.basis)
        fam = cls(zero, basis, name=f"comatrix{pair.name}")
        object.__setattr__(fam, "parameters", central)
        return fam

    @classmethod
    def span(cls, c: PreCoring, deltas, name: str = "") -> "ComultFamily":
        fam = cls(c, tuple(la.as_matrix(d, c.p).reshape(c.square.dim, c.dim) for d in deltas), name)
        rep = fam.check()
        if not rep.ok:
            raise AxiomError(rep.failures[0], where="comultiplication family")
        return fam


def build_local_comult(fam: ComultFamily, served, budget: int = DEFAULT_BUDGET) -> LocalComultCertificate:
    """Grow a right ``epsilon``-comultiplication one element at a time.

    Each new element contributes its defect ``x - psi(x)``; a family
    member serving the defect is combined with the current one by
    :func:`combine_right_comults`.  Choices are backtracked over.
    """
    c, p = fam.coring, fam.coring.p
    vecs = list(_rows(served, c.dim))
    visited = [0]

    def grow(delta, rest):
        if not rest:
            return delta
        x = rest[0]
        defect = (x - projection(c, delta) @ x) % p
        try:
            sol = fam.solutions([defect])
        except Infeasible:
            return None
        for y in sol.members(budget):
            visited[0] += 1
            if visited[0] > budget:
                raise BudgetExceeded(visited[0], budget)
            found = grow(combine_right_comults(c, delta, fam.member(y)), rest[1:])
            if found is not None:
                return found
        return None

    delta = grow(np.zeros((c.square.dim, c.dim), dtype=DTYPE), vecs)
    if delta is None:
        raise Infeasible("no combination of singleton comultiplications serves the set")
    return check_eps_comult(c, delta, served, "right")


def endomorphism_ring(c: PreCoring, side: str = "right"):
    """``End`` of the bimodule ``C`` acting on ``C``.

    Right: product ``f . g = g o f`` and ``C`` a right module.  Left:
    product ``f . g = f o g`` and ``C`` a left module.  Returns
    ``(ring, module, space)`` with ``space`` the flattened endomorphisms.
    """
    from .algebras import endomorphisms

    p, n = c.p, c.dim
    V = endomorphisms(c.carrier, sides=("left", "right"))
    mats = [b.reshape(n, n) for b in V.basis]
    d = len(mats)
    struct = np.zeros((d, d, d), dtype=DTYPE)
    for i in range(d):
        for j in range(d):
            prod_ = mats[j] @ mats[i] if side == "right" else mats[i] @ mats[j]
            struct[i, j] = V.coordinates((prod_ % p).reshape(-1))
    k = Algebra.ground(p)
    ring = RingOver(k, Bimodule.vector_space(d, p), struct, name=f"End({c.name})")
    module = ModuleOver(ring, Bimodule.vector_space(n, p), mats, side)
    return ring, module, V


def unit_from_comult(cert: LocalComultCertificate) -> LocalUnitCertificate:
    """The endomorphism ``(C (x) eps) o Delta`` as a local unit of ``End(C)`` on the served set."""
    if cert.side == "two-sided":
        raise ValueError("pass a one-sided certificate")
    c = cert.coring
    ring, module, V = endomorphism_ring(c, cert.side)
    P = cert.projections()[cert.side]
    e = V.coordinates(P.reshape(-1))
    return LocalUnitCertificate(e, ring, module, cert.served, cert.side, cert.idempotent).validate()


@dataclass
class Restriction:
    """Summand ``E`` of ``C`` with its own comultiplication."""

    subspace: Subspace
    projection: np.ndarray
    delta: np.ndarray
    coring: PreCoring
    inclusion: np.ndarray
    retraction: np.ndarray
    report: Report


def strong_restriction(cert: LocalComultCertificate) -> Restriction:
    """Cut ``C`` down to the image of the idempotent projection.

    One-sided: ``E = Im psi`` with ``Delta_E = (psi (x) psi) o Delta``, a
    right-counital comultiplication on ``E``.  Two-sided: ``alpha`` and
    ``beta`` commute, ``E = Im(alpha beta)`` and ``Delta`` itself restricts to
    a counital coring on ``E``.
    """
    c, p = cert.coring, cert.coring.p
    if not cert.idempotent:
        raise AxiomError("idempotent", message="restriction needs an idempotent certificate")
    rep = Report(f"{cert.side} restriction")
    P = cert.projections()
    if cert.side == "two-sided":
        alpha, beta = P["right"], P["left"]
        rep.add("projections commute", la.equal(alpha @ beta % p, beta @ alpha % p, p))
        psi = alpha @ beta % p
        delta_E = cert.delta
    else:
        psi = P[cert.side]
        delta_E = induced(c.square, c.square, [psi, psi]) @ cert.delta % p
    rep.add("projection idempotent", la.equal(psi @ psi % p, psi, p))
    E = la.image(psi, p)
    rep.add("image is a sub-bimodule", c.carrier.is_invariant(E))
    sub, inc = c.carrier.submodule(E)
    # coordinates on E of psi(x): E's basis rows are reduced, so read off at pivots
    ret = psi[list(E.pivots), :] % p if E.dim else la.zeros(0, c.dim)
    rep.add("direct summand", la.equal(inc @ ret % p, psi, p))
    T_E = tensor(sub, sub)
    down = induced(c.square, T_E, [ret, ret])
    up = induced(T_E, c.square, [inc, inc])
    delta_on_E = down @ delta_E @ inc % p
    rep.add("comultiplication lands in E (x) E", la.equal(up @ delta_on_E % p, delta_E @ inc % p, p))
    eps_E = c.epsilon @ inc % p if c.epsilon is not None else None
    ring = PreCoring(sub, delta_on_E, eps_E, name=f"{c.name}|E")
    from .corings import check_coring

    law = check_coring(ring, counital=False)
    rep.add("coassociative on E", law.ok)
    I = la.identity(sub.dim)
    rep.add("right counit law on E", la.equal(right_contraction(ring) @ delta_on_E % p, I, p))
    if cert.side in ("left", "two-sided"):
        rep.add("left counit law on E", la.equal(left_contraction(ring) @ delta_on_E % p, I, p))
    if cert.side == "left":
        del rep.checks["right counit law on E"]
    D = _rows(cert.served, c.dim)
    rep.add("served set inside E", all(E.contains(d) for d in D))
    return Restriction(E, psi, delta_E, ring, inc, ret, rep)


# ---------------------------------------------------------------------------
# local comodules

def check_local_comodule(m: Bimodule, delta_N, c: PreCoring, delta, served, strong: bool = False) -> Report:
    """A coaction ``delta_N: M -> M (x) C`` with counit law on ``served`` and compatibility with ``delta``."""
    p = c.p
    com = Comodule(c.with_delta(delta), m, delta_N, "right")
    rep = Report("local comodule")
    rep.add("A-linear coaction", com.check().checks["A-linear coaction"])
    a, b = com.coaction_composites()
    rep.add("compatible with the comultiplication", la.equal(a, b, p))
    P = com.counit_map()
    rep.add("counit law on served set", all(la.equal(P @ n % p, n, p) for n in _rows(served, m.dim)))
    if strong:
        rep.add("projection idempotent", la.equal(P @ P % p, P, p))
    return rep


# ---------------------------------------------------------------------------
# local counits

@dataclass
class LocalCounitCertificate:
    """A bimodule map ``eps: C -> A`` with ``(M (x) eps) o delta = id`` on ``served``."""

    epsilon: np.ndarray
    comodule: Comodule
    served: np.ndarray
    idempotent: bool = False
    unit: LocalUnitCertificate | None = None

    def check(self) -> Report:
        m, p = self.comodule, self.comodule.p
        c = m.coring
        rep = Report("local counit")
        rep.add("bimodule map", BimoduleMap(c.carrier, c.A.regular, self.epsilon).check().ok)
        P = m.counit_map(self.epsilon)
        rep.add("counit law on served set", all(la.equal(P @ n % p, n, p) for n in _rows(self.served, m.dim)))
        if self.idempotent:
            rep.add("idempotent", idempotency_conditions(c, self.epsilon)["(eps (x) eps) Delta = eps"])
        return rep

    def validate(self) -> "LocalCounitCertificate":
        rep = self.check()
        if not rep.ok:
            raise AxiomError(rep.failures[0], where="local counit")
        return self


def idempotency_conditions(c: PreCoring, eps) -> dict:
    """The three equivalent forms of idempotency of a counit ``eps``."""
    p = c.p
    eps = la.as_matrix(eps, p).reshape(c.A.dim, c.dim)
    A = c.A
    T = tensor(A.regular, A.regular)
    pushed = induced(c.square, T, [eps, eps]) @ c.delta % p
    ee = _multiplication_on(A) @ pushed % p
    cr = dual_ring(c)
    f = cr.coords(eps) if cr.contains(eps) else None
    conv = f is not None and la.equal(cr.mul(f, f), f, p)
    morph = la.equal(trivial_coring(A).delta @ eps % p, pushed, p)
    return {
        "(eps (x) eps) Delta = eps": la.equal(ee, eps, p),
        "comultiplicative": morph,
        "idempotent in the dual ring": conv,
    }


def _multiplication_on(A: Algebra) -> np.ndarray:
    T = tensor(A.regular, A.regular)
    raw = A.structure.reshape(A.dim * A.dim, A.dim).T
    return raw @ T.sigma % A.p


def find_local_counit(m: Comodule, served, idempotent: bool = False,
                      budget: int = DEFAULT_BUDGET) -> LocalCounitCertificate:
    """A right counit on ``served`` found as a local unit of ``*C`` acting on ``M``."""
    cr = dual_ring(m.coring)
    module = m.module_over_dual(cr)
    if idempotent:
        u = find_idempotent_local_unit(cr.ring, module, served, budget=budget)
    else:
        u = find_local_unit(cr.ring, module, served)
    cert = LocalCounitCertificate(cr.functional(u.element), m, _rows(served, m.dim), idempotent, u)
    return cert.validate()


def local_counit_solutions(m: Comodule, served) -> list:
    """Every right counit on ``served``, as functional matrices (via the unit search in ``*C``)."""
    cr = dual_ring(m.coring)
    module = m.module_over_dual(cr)
    try:
        sol = unit_solutions(cr.ring, module, _rows(served, m.dim))
    except Infeasible:
        return []
    return [cr.functional(x) for x in sol.members()]


def cofirm_check(m: Comodule) -> bool:
    """Does ``delta_M`` corestrict to an isomorphism ``M -> M (x)^C C``?"""
    return cofirm_report(m).ok


def cofirm_report(m: Comodule) -> Report:
    p = m.p
    c = m.coring
    left = Comodule.regular(c, "left")
    ct = cotensor(m, left)
    rep = Report("cofirm")
    img = la.image(m.coaction, p)
    rep.add("coaction injective", img.dim == m.dim)
    rep.add("coaction onto the cotensor product", img.equals(ct))
    rep.details["cotensor dim"] = ct.dim
    return rep


def has_local_counits(m: Comodule, elementwise: bool = False, budget: int = DEFAULT_BUDGET) -> bool:
    """Right local counits on ``M`` (a single counit on a basis, or one per element when ``elementwise``)."""
    targets = [[v] for v in la.all_vectors(m.dim, p=m.p)] if elementwise else [la.identity(m.dim)]
    for served in targets:
        try:
            find_local_counit(m, served, budget=budget)
        except Infeasible:
            return False
    return True


# ---------------------------------------------------------------------------
# eta-multiplications

def _mult_parts(carrier: Bimodule):
    return tensor(carrier, carrier), tensor(carrier, carrier, carrier)


def mult_from_ring(ring: RingOver) -> np.ndarray:
    """The multiplication of a ``B``-ring as a map ``R (x)_B R -> R``."""
    T2 = tensor(ring.carrier, ring.carrier)
    return ring.raw_multiplication @ T2.sigma % ring.p


def mult_composites(carrier: Bimodule, mu1, mu2) -> tuple[np.ndarray, np.ndarray]:
    """``mu1 o (R (x) mu2)`` and ``mu2 o (mu1 (x) R)`` as maps from ``R (x) R (x) R``."""
    T2, T3 = _mult_parts(carrier)
    p = carrier.p
    I = la.identity(carrier.dim)
    r1, r2 = mu1 @ T2.pi % p, mu2 @ T2.pi % p
    a = mu1 @ induced(T3, T2, [I, r2]) % p
    b = mu2 @ induced(T3, T2, [r1, I]) % p
    return a, b


def is_associative(carrier: Bimodule, mu) -> bool:
    a, b = mult_composites(carrier, mu, mu)
    return la.equal(a, b, carrier.p)


def associate_check(carrier: Bimodule, mu1, mu2) -> bool:
    """``mu1 (R (x) mu2) = mu2 (mu1 (x) R)`` and ``mu2 (R (x) mu1) = mu1 (mu2 (x) R)``."""
    a, b = mult_composites(carrier, mu1, mu2)
    c, d = mult_composites(carrier, mu2, mu1)
    return la.equal(a, b, carrier.p) and la.equal(c, d, carrier.p)


def _right_by(carrier, mu, e):
    T2 = tensor(carrier, carrier)
    return mu @ T2.pi @ np.kron(la.identity(carrier.dim), e.reshape(-1, 1)) % carrier.p


def _left_by(carrier, mu, e):
    T2 = tensor(carrier, carrier)
    return mu @ T2.pi @ np.kron(e.reshape(-1, 1), la.identity(carrier.dim)) % carrier.p


@dataclass
class LocalMultCertificate:
    """An associative ``mu: R (x)_B R -> R`` with ``mu(t (x) e) = t`` (right) on ``served``."""

    mu: np.ndarray
    carrier: Bimodule
    served: np.ndarray
    unit: np.ndarray
    side: str = "right"

    def check(self) -> Report:
        R, p, e = self.carrier, self.carrier.p, self.unit
        T2 = tensor(R, R)
        rep = Report(f"{self.side} eta-multiplication")
        rep.add("bilinear", BimoduleMap(T2.carrier, R, self.mu).check().ok)
        rep.add("associative", is_associative(R, self.mu))
        rep.add("unit central", all(la.equal(l @ e % p, r @ e % p, p)
                                    for l, r in zip(R.left_actions, R.right_actions)))
        T = _rows(self.served, R.dim)
        sides = ("right", "left") if self.side == "two-sided" else (self.side,)
        for s in sides:
            P = _right_by(R, self.mu, e) if s == "right" else _left_by(R, self.mu, e)
            rep.add(f"{s} unit law on served set", all(la.equal(P @ t % p, t, p) for t in T))
        return rep

    def validate(self) -> "LocalMultCertificate":
        rep = self.check()
        if not rep.ok:
            raise AxiomError(rep.failures[0], where=f"{self.side} eta-multiplication")
        return self


def check_eta_mult(carrier: Bimodule, mu, served, unit, side: str = "right") -> LocalMultCertificate:
    """Validate ``mu`` as an ``eta``-multiplication on ``served`` with ``eta(1) = unit``."""
    T2 = tensor(carrier, carrier)
    mu = la.as_matrix(mu, carrier.p).reshape(carrier.dim, T2.dim)
    e = la.as_vector(unit, carrier.p)
    return LocalMultCertificate(mu, carrier, _rows(served, carrier.dim), e, side).validate()


def combine_mults(carrier: Bimodule, mu1, mu2, unit, mode: str = "right") -> np.ndarray:
    """``r o s = mu1(r, s) + mu2(r, s) - mu2(mu1(r, e), s)``.

    right: ``mu1`` serves a set, ``mu2`` the defects ``t - mu1(t, e)``.
    mixed: ``mu1`` a right multiplication on ``t``, ``mu2`` a left one on ``s``.
    """
    if mode not in ("right", "mixed"):
        raise ValueError(f"unknown combination mode {mode!r}")
    if not associate_check(carrier, mu1, mu2):
        raise AxiomError("associate", message="the two multiplications do not associate")
    p = carrier.p
    e = la.as_vector(unit, p)
    T2 = tensor(carrier, carrier)
    rho = _right_by(carrier, mu1, e)
    shifted = induced(T2, T2, [rho, la.identity(carrier.dim)])
    return (mu1 + mu2 - mu2 @ shifted) % p


def sandwich_mult(ring: RingOver, x) -> np.ndarray:
    """``mu_x(r, s) = r x s``: any two of these associate."""
    T2 = tensor(ring.carrier, ring.carrier)
    x = la.as_vector(x, ring.p)
    d = ring.dim
    raw = np.zeros((d, d * d), dtype=DTYPE)
    for i in range(d):
        rx = ring.mul(ring.basis(i), x)
        for j in range(d):
            raw[:, i * d + j] = ring.mul(rx, ring.basis(j))
    return raw @ T2.sigma % ring.p


def build_local_mult(ring: RingOver, served, unit, budget: int = DEFAULT_BUDGET) -> LocalMultCertificate:
    """Grow a right ``eta``-multiplication within the sandwich family, backtracking over choices."""
    p, R = ring.p, ring.carrier
    e = la.as_vector(unit, p)
    vecs = list(_rows(served, ring.dim))
    visited = [0]

    def grow(mu, rest):
        if not rest:
            return mu
        t = rest[0]
        defect = (t - _right_by(R, mu, e) @ t) % p
        try:
            sol = sandwich_solutions(ring, [defect], e)
        except Infeasible:
            return None
        for x in sol.members(budget):
            visited[0] += 1
            if visited[0] > budget:
                raise BudgetExceeded(visited[0], budget)
            found = grow(combine_mults(R, mu, sandwich_mult(ring, x), e), rest[1:])
            if found is not None:
                return found
        return None

    mu = grow(np.zeros((ring.dim, tensor(R, R).dim), dtype=DTYPE), vecs)
    if mu is None:
        raise Infeasible("no combination of singleton multiplications serves the set")
    return check_eta_mult(R, mu, served, e, "right")


def sandwich_solutions(ring: RingOver, served, unit) -> la.AffineSet:
    """All ``x`` with ``t x e = t`` for ``t`` in ``served``; raises :class:`Infeasible`."""
    p = ring.p
    e = la.as_vector(unit, p)
    blocks = []
    for t in _rows(served, ring.dim):
        cols = np.array([ring.mul(ring.mul(t, ring.basis(j)), e) for j in range(ring.dim)], dtype=DTYPE)
        blocks.append((cols.reshape(ring.dim, ring.dim).T, t))
    if not blocks:
        return la.AffineSet(np.zeros(ring.dim, dtype=DTYPE), Subspace.full(ring.dim, p))
    return la.solve_stacked(blocks, p)


# ---------------------------------------------------------------------------
# from comultiplications to multiplications

def dual_mult_from_comult(c: PreCoring, delta=None) -> tuple[ConvolutionRing, np.ndarray]:
    """``*_Delta`` on ``*C`` as a ring and as a map ``*C (x)_A *C -> *C``."""
    cr = dual_ring(c, delta)
    return cr, mult_from_ring(cr.ring)


def associate_transfer(c: PreCoring, d1, d2) -> bool:
    """Do ``*_D1`` and ``*_D2`` associate?  Both rings share the carrier ``*C``."""
    r1, mu1 = dual_mult_from_comult(c, d1)
    _, mu2 = dual_mult_from_comult(c, d2)
    return associate_check(r1.ring.carrier, mu1, mu2)


@dataclass
class MultTransfer:
    """``*C`` acting on ``C`` by ``c . f = (C (x) f) Delta(c)`` with ``eta(1) = eps``."""

    ring: ConvolutionRing
    module: ModuleOver
    unit: np.ndarray
    unit_action: np.ndarray
    report: Report


def transfer_comult(cert: LocalComultCertificate) -> MultTransfer:
    """Turn a right ``epsilon``-comultiplication on ``D`` into a local multiplication of ``*C`` on ``C``.

    For an idempotent certificate the projection onto the summand ``E``
    must be right multiplication by ``eps``.
    """
    if cert.side != "right":
        raise ValueError("right certificates only")
    c, p = cert.coring, cert.coring.p
    cr = dual_ring(c, cert.delta)
    acts = [right_contraction(c, F) @ cert.delta % p for F in cr.hom.basis_matrices()]
    module = ModuleOver(cr.ring, c.carrier, acts, "right")
    rep = Report("multiplication transfer")
    rep.add("module over the dual ring", module.check().ok)
    rep.add("epsilon in the dual ring", cr.contains(c.epsilon))
    e = cr.coords(c.epsilon)
    rep.add("epsilon central", all(la.equal(l @ e % p, r @ e % p, p)
                                   for l, r in zip(cr.ring.carrier.left_actions, cr.ring.carrier.right_actions)))
    act_e = module.act(e)
    D = _rows(cert.served, c.dim)
    rep.add("unit law on served set", all(la.equal(act_e @ d % p, d, p) for d in D))
    psi = projection(c, cert.delta, "right")
    rep.add("projection equals right multiplication by eps", la.equal(act_e, psi, p))
    if cert.idempotent:
        rep.add("multiplication by eps idempotent", la.equal(act_e @ act_e % p, act_e, p))
        E = la.image(psi, p)
        rep.add("unit law on the summand", all(la.equal(act_e @ v % p, v, p) for v in E.basis))
    return MultTransfer(cr, module, e, act_e, rep)
