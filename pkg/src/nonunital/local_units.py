"""
Local units of rings over a base algebra: linear search, idempotent search,
the combination formulas that grow a unit from smaller ones, firmness, the
induced base action, and finite split direct systems.

A local unit for a finite set ``F`` of module elements is an element ``e``
of the centralizer ``R^B`` with ``m . e = m`` (right), ``e . m = m`` (left)
or both, for every ``m`` in ``F``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import exactla as la
from .algebras import Bimodule, ModuleOver, RingOver, tensor
from .errors import AxiomError, BudgetExceeded, Infeasible, Report
from .exactla import DTYPE, Subspace

DEFAULT_BUDGET = 2**16


def _modules(module):
    if isinstance(module, ModuleOver):
        return (module,)
    return tuple(module)


def _side_of(mods):
    sides = {m.side for m in mods}
    return sides.pop() if len(sides) == 1 else "two-sided"


def regular_pair(ring: RingOver):
    """``R`` as a right and as a left module over itself (two-sided searches)."""
    return (ModuleOver.regular(ring, "right"), ModuleOver.regular(ring, "left"))


def _served(vectors, dim):
    return la.as_rows(vectors, dim)


def unit_system(ring: RingOver, module, served) -> list:
    """Linear constraints on ``e`` (coordinates in ``ring``): centrality plus unit law."""
    p = ring.p
    blocks = []
    central = [(l - r) % p for l, r in zip(ring.carrier.left_actions, ring.carrier.right_actions)]
    if central:
        blocks.append((np.vstack(central), np.zeros(ring.dim * len(central), dtype=DTYPE)))
    mods = _modules(module)
    for mod, vecs in zip(mods, served if len(mods) > 1 else (served,)):
        for n in _served(vecs, mod.dim):
            cols = np.array([a @ n % p for a in mod.actions], dtype=DTYPE).reshape(ring.dim, mod.dim).T
            blocks.append((cols, n))
    return blocks


def unit_solutions(ring: RingOver, module, served) -> la.AffineSet:
    """Affine space of local units; raises :class:`Infeasible`."""
    blocks = [(A, b) for A, b in unit_system(ring, module, served) if A.shape[0]]
    if not blocks:
        return la.AffineSet(np.zeros(ring.dim, dtype=DTYPE), Subspace.full(ring.dim, ring.p))
    return la.solve_stacked(blocks, ring.p)


@dataclass
class LocalUnitCertificate:
    """An element ``e`` of ``R^B`` acting as identity on ``served``."""

    element: np.ndarray
    ring: RingOver
    module: object
    served: object
    side: str
    idempotent: bool = False

    def check(self) -> Report:
        rep = Report(f"{self.side} local unit")
        r, e, p = self.ring, self.element, self.ring.p
        rep.add("central", all(la.equal(l @ e % p, x @ e % p, p)
                               for l, x in zip(r.carrier.left_actions, r.carrier.right_actions)))
        mods = _modules(self.module)
        served = self.served if len(mods) > 1 else (self.served,)
        ok = True
        for mod, vecs in zip(mods, served):
            act = mod.act(e)
            ok &= all(la.equal(act @ n % p, n, p) for n in _served(vecs, mod.dim))
        rep.add("acts as identity on served set", ok)
        if self.idempotent:
            rep.add("idempotent", r.is_idempotent(e))
        return rep

    def validate(self) -> "LocalUnitCertificate":
        rep = self.check()
        if not rep.ok:
            raise AxiomError(rep.failures[0], where="local unit certificate")
        return self


def find_local_unit(ring: RingOver, module, served, side: str | None = None) -> LocalUnitCertificate:
    """Lexicographically smallest local unit on ``served``.

    ``module`` is a :class:`ModuleOver` (one side) or a tuple of modules
    (e.g. :func:`regular_pair`) whose constraints are imposed together;
    ``served`` is then a matching tuple of vector lists.
    """
    mods = _modules(module)
    side = side or _side_of(mods)
    sol = unit_solutions(ring, module, served)
    return LocalUnitCertificate(sol.lex_min(), ring, module, served, side).validate()


def find_idempotent_local_unit(ring: RingOver, module, served, side: str | None = None,
                               budget: int = DEFAULT_BUDGET) -> LocalUnitCertificate:
    """Lexicographically smallest idempotent local unit, by scanning the affine solution space."""
    mods = _modules(module)
    side = side or _side_of(mods)
    sol = unit_solutions(ring, module, served)
    for e in sol.members(budget):
        if ring.is_idempotent(e):
            return LocalUnitCertificate(e, ring, module, served, side, idempotent=True).validate()
    raise Infeasible("no idempotent element in the affine space of local units")


def combine_units(ring: RingOver, e1, e2, mode: str = "right") -> np.ndarray:
    """Combine two units: ``e1 + e2 - e1 e2`` (right, mixed) or ``e1 + e2 - e2 e1`` (left, idempotent).

    right: ``e1`` serves ``F`` and ``e2`` serves the defects ``n - n e1``.
    left: mirror image with defects ``n - e1 n``.
    mixed: ``e1`` a right unit on one set, ``e2`` a left unit on another.
    idempotent: ``e1`` an idempotent left unit on ``F``, ``e2`` an idempotent
    right unit on ``F`` and ``e1``; the result is a two-sided idempotent unit.
    """
    e1, e2 = la.as_vector(e1, ring.p), la.as_vector(e2, ring.p)
    if mode in ("right", "mixed"):
        cross = ring.mul(e1, e2)
    elif mode in ("left", "idempotent"):
        cross = ring.mul(e2, e1)
    else:
        raise ValueError(f"unknown combination mode {mode!r}")
    return (e1 + e2 - cross) % ring.p


def build_local_unit(ring: RingOver, module: ModuleOver, served, budget: int = DEFAULT_BUDGET):
    """Grow a one-sided local unit on ``served`` one element at a time.

    Starting from ``e = 0`` (a unit on the empty set), each new element ``n``
    contributes the defect ``n - n e`` (right) or ``n - e n`` (left); a unit
    for the defect alone is combined with ``e``.  Choices of the singleton
    units are backtracked over, so the result exists exactly when some
    local unit on ``served`` exists.  Returns a certificate or raises
    :class:`Infeasible`.
    """
    p = ring.p
    side = module.side
    vecs = list(_served(served, module.dim))
    visited = [0]

    def grow(e, rest):
        if not rest:
            return e
        n = rest[0]
        defect = (n - module.act(e) @ n) % p
        try:
            sol = unit_solutions(ring, module, [defect])
        except Infeasible:
            return None
        for e2 in sol.members(budget):
            visited[0] += 1
            if visited[0] > budget:
                raise BudgetExceeded(visited[0], budget)
            found = grow(combine_units(ring, e, e2, side), rest[1:])
            if found is not None:
                return found
        return None

    e = grow(np.zeros(ring.dim, dtype=DTYPE), vecs)
    if e is None:
        raise Infeasible("no combination of singleton units serves the set")
    return LocalUnitCertificate(e, ring, module, served, side).validate()


def build_idempotent_two_sided_unit(ring: RingOver, served, budget: int = DEFAULT_BUDGET):
    """Two-sided idempotent local unit on ``served`` inside ``R`` by combining one-sided ones.

    An idempotent left unit ``e1`` on ``served`` is combined with an
    idempotent right unit ``e2`` on ``served`` and ``e1``.
    """
    right, left = regular_pair(ring)
    vecs = _served(served, ring.dim)
    try:
        left_sol = unit_solutions(ring, left, vecs)
    except Infeasible:
        raise Infeasible("no left local unit") from None
    for e1 in left_sol.members(budget):
        if not ring.is_idempotent(e1):
            continue
        try:
            cert2 = find_idempotent_local_unit(ring, right, np.vstack([vecs, e1]), budget=budget)
        except Infeasible:
            continue
        e = combine_units(ring, e1, cert2.element, "idempotent")
        return LocalUnitCertificate(e, ring, (right, left), (vecs, vecs), "two-sided", idempotent=True).validate()
    raise Infeasible("no idempotent left unit extends to a two-sided one")


def has_local_units(ring: RingOver, module, side: str | None = None) -> bool:
    """Per-element feasibility over a basis of ``module``.

    For a finite-dimensional module this is the same as a single unit
    serving the whole basis (units combine).
    """
    mods = _modules(module)
    served = [la.identity(m.dim) for m in mods]
    try:
        unit_solutions(ring, module, served if len(mods) > 1 else served[0])
    except Infeasible:
        return False
    return True


# ---------------------------------------------------------------------------
# firmness and the induced base action

def firm_quotient(m: ModuleOver):
    """``M (x)_R R`` (right) or ``R (x)_R M`` (left) with its induced action map.

    Returns ``(quotient, action)`` where ``action`` is the matrix of the map
    from the quotient to ``M``.
    """
    R, p = m.ring, m.p
    if m.side == "right":
        T = tensor(m.carrier, R.carrier)
        gens = []
        for i in range(m.dim):
            mi = la.identity(m.dim)[i]
            for a in range(R.dim):
                for b in range(R.dim):
                    ra, rb = R.basis(a), R.basis(b)
                    gens.append(T.pure(m.apply(ra, mi), rb) - T.pure(mi, R.mul(ra, rb)))
    else:
        T = tensor(R.carrier, m.carrier)
        gens = []
        for i in range(m.dim):
            mi = la.identity(m.dim)[i]
            for a in range(R.dim):
                for b in range(R.dim):
                    ra, rb = R.basis(a), R.basis(b)
                    gens.append(T.pure(ra, m.apply(rb, mi)) - T.pure(R.mul(ra, rb), mi))
    rel = Subspace.span(np.array(gens, dtype=DTYPE) % p if gens else np.zeros((0, T.dim)), T.dim, p)
    q = la.quotient_with_section(T.dim, rel)
    act = m.raw_action() @ T.sigma % p
    return q, act @ q.section % p


def check_firm(m: ModuleOver) -> bool:
    """Is the action ``M (x)_R R -> M`` (or ``R (x)_R M -> M``) bijective?"""
    q, act = firm_quotient(m)
    return q.dim == m.dim and la.rank(act, m.p) == m.dim


def induce_base_action(m: ModuleOver, ring: RingOver | None = None, check_independence: bool = True) -> Bimodule:
    """Right ``B``-action ``m . b := m . (e b)`` for a right module with local units.

    ``ring`` is the ``B``-ring (defaults to ``m.ring``); ``m`` may be a module
    over the same ring with the base forgotten.  Each basis vector uses the
    lexicographically smallest unit on it; with ``check_independence`` the
    action is recomputed with the unit serving the whole basis and
    compared.
    """
    if m.side != "right":
        raise ValueError("only right modules are supported; use the opposite ring for left modules")
    R = ring or m.ring
    p = m.p
    basis = la.identity(m.dim)
    units = []
    for i in range(m.dim):
        try:
            units.append(find_local_unit(R, m, [basis[i]]).element)
        except Infeasible:
            raise AxiomError("local units on the module", where=f"basis vector {i}") from None

    def action(unit_for):
        mats = []
        for rb in R.carrier.right_actions:
            cols = [m.apply(rb @ unit_for(i) % p, basis[i]) for i in range(m.dim)]
            mats.append(np.array(cols, dtype=DTYPE).T.reshape(m.dim, m.dim))
        return mats

    mats = action(lambda i: units[i])
    if check_independence and m.dim:
        e_all = find_local_unit(R, m, basis).element
        if not all(la.equal(a, b, p) for a, b in zip(mats, action(lambda i: e_all))):
            raise AxiomError("independence of the chosen local unit")
    return Bimodule(m.carrier.left, R.base, m.carrier.left_actions, mats, name=m.carrier.name)


# ---------------------------------------------------------------------------
# split direct systems over a finite poset

def _closure(elements, pairs):
    leq = {(i, i) for i in elements} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(leq), repeat=2):
            if b == c and (a, d) not in leq:
                leq.add((a, d))
                changed = True
    return leq


@dataclass
class SplitSystem:
    """Objects ``C_i``, maps ``phi[(j, i)]: C_i -> C_j`` and ``psi[(i, j)]: C_j -> C_i`` for ``i <= j``."""

    objects: dict
    leq: set
    phi: dict
    psi: dict = field(default_factory=dict)

    def __post_init__(self):
        self.leq = _closure(list(self.objects), self.leq)
        for i, c in self.objects.items():
            self.phi.setdefault((i, i), la.identity(c.dim))
            self.psi.setdefault((i, i), la.identity(c.dim))

    @property
    def p(self):
        return next(iter(self.objects.values())).p

    def upper_bound(self, i, j):
        for k in self.objects:
            if (i, k) in self.leq and (j, k) in self.leq:
                return k
        return None

    def is_directed(self) -> bool:
        return all(self.upper_bound(i, j) is not None for i in self.objects for j in self.objects)

    def top(self):
        for k in self.objects:
            if all((i, k) in self.leq for i in self.objects):
                return k
        return None

    @classmethod
    def chain(cls, objects, forward, backward=None) -> "SplitSystem":
        """Chain ``C_0 -> C_1 -> ...`` from consecutive maps, composing the rest."""
        n = len(objects)
        p = objects[0].p
        phi, psi = {}, {}
        for i in range(n):
            for j in range(i + 1, n):
                f = la.identity(objects[i].dim)
                for t in range(i, j):
                    f = forward[t] @ f % p
                phi[(j, i)] = f
                if backward is not None:
                    g = la.identity(objects[j].dim)
                    for t in range(j - 1, i - 1, -1):
                        g = backward[t] @ g % p
                    psi[(i, j)] = g
        return cls(dict(enumerate(objects)), {(i, i + 1) for i in range(n - 1)}, phi, psi)


def colimit_with_retractions(s: SplitSystem):
    """Colimit of the system with its insertions and the retractions built from ``psi``.

    Returns ``(colimit, phis, psis)`` keyed by the poset elements.  The
    colimit is the direct sum modulo ``c_i - phi_ji(c_i)``.
    """
    if not s.is_directed():
        raise AxiomError("directed poset")
    p = s.p
    keys = list(s.objects)
    dims = [s.objects[i].dim for i in keys]
    offs = np.concatenate([[0], np.cumsum(dims)]).astype(int)
    total = int(offs[-1])
    gens = []
    for (i, j) in s.leq:
        if i == j:
            continue
        a, b = keys.index(i), keys.index(j)
        for t in range(dims[a]):
            v = np.zeros(total, dtype=DTYPE)
            v[offs[a] + t] = 1
            v[offs[b]:offs[b + 1]] = (v[offs[b]:offs[b + 1]] - s.phi[(j, i)][:, t]) % p
            gens.append(v)
    rel = Subspace.span(np.array(gens, dtype=DTYPE) if gens else np.zeros((0, total)), total, p)
    q = la.quotient_with_section(total, rel)
    phis, psis = {}, {}
    top = s.top()
    for a, i in enumerate(keys):
        inc = np.zeros((total, dims[a]), dtype=DTYPE)
        inc[offs[a]:offs[a + 1]] = la.identity(dims[a])
        phis[i] = q.projection @ inc % p
        if top is not None and (i, top) in s.psi:
            # psi_i [x] = sum_j psi_{i,top} phi_{top,j} x_j
            blocks = [s.psi[(i, top)] @ s.phi[(top, j)] % p for j in keys]
            raw = np.hstack(blocks) if blocks else np.zeros((dims[a], 0), dtype=DTYPE)
            psis[i] = raw @ q.section % p
    objs = list(s.objects.values())
    carrier = Bimodule.vector_space(q.dim, p, name="colim")
    if objs and all(o.left.dim == objs[0].left.dim for o in objs):
        proj = lambda mats: [q.projection @ _block_diag([m[k] for m in mats], dims) @ q.section % p
                             for k in range(len(mats[0]))]
        try:
            carrier = Bimodule(objs[0].left, objs[0].right, proj([o.left_actions for o in objs]),
                               proj([o.right_actions for o in objs]), name="colim")
        except AxiomError:
            pass
    return carrier, phis, psis


def _block_diag(mats, dims):
    total = sum(dims)
    out = np.zeros((total, total), dtype=DTYPE)
    off = 0
    for m, d in zip(mats, dims):
        out[off:off + d, off:off + d] = m
        off += d
    return out


def check_split_system(s: SplitSystem) -> Report:
    """Direct-system laws, splitting laws, and the colimit characterisation of splitting."""
    rep = Report("split direct system")
    p = s.p
    directed = s.is_directed()
    rep.add("directed", directed)
    pairs = [(i, j) for (i, j) in s.leq]
    bad = [(i, j, k) for (i, j) in pairs for (j2, k) in pairs if j2 == j
           if not la.equal(s.phi[(k, j)] @ s.phi[(j, i)] % p, s.phi[(k, i)], p)]
    rep.add("forward maps compose", not bad, detail={"triples": bad[:5]} if bad else None)
    missing = [(i, j) for (i, j) in pairs if (i, j) not in s.psi]
    rep.add("backward maps given", not missing, detail={"missing": missing} if missing else None)
    if missing:
        rep.conditions["system split"] = False
        return rep
    bad = [(i, j, k) for (i, j) in pairs for (j2, k) in pairs if j2 == j
           if not la.equal(s.psi[(i, j)] @ s.psi[(j, k)] % p, s.psi[(i, k)], p)]
    rep.add("backward maps compose", not bad, detail={"triples": bad[:5]} if bad else None)
    bad = [(i, j) for (i, j) in pairs
           if not la.equal(s.psi[(i, j)] @ s.phi[(j, i)] % p, la.identity(s.objects[i].dim), p)]
    rep.add("retractions", not bad, detail={"pairs": bad} if bad else None)
    rep.conditions["system split"] = rep.ok
    if directed:
        _, phis, psis = colimit_with_retractions(s)
        ok = bool(psis) and all(
            la.equal(psis[i] @ phis[i] % p, la.identity(s.objects[i].dim), p) for i in s.objects)
        ok = ok and all(la.equal(psis[i] @ phis[j] @ psis[j] % p, psis[i], p) for (i, j) in pairs)
        rep.conditions["colimit retractions"] = ok
        if ok:
            # reverse direction: psi_i o phi_j rebuilds the backward maps
            rebuilt = all(la.equal(psis[i] @ phis[j] % p, s.psi[(i, j)], p) for (i, j) in pairs)
            rep.conditions["colimit retractions"] = rebuilt
        rep.add("colimit characterisation agrees", rep.agreement)
    return rep
