"""
Brute-force oracles: plain enumeration over F_p, no elimination.

Every search in the library is an affine solve; these functions answer the
same questions by trying every candidate, so the two can be compared.
"""

from __future__ import annotations

import itertools

import numpy as np

from .corings import Comodule, dual_ring
from .dual_pairs import DualPair, ElementaryRing
from .errors import BudgetExceeded, Report
from .exactla import DTYPE

ORACLE_BUDGET = 2**16


def vectors(n: int, p: int, budget: int = ORACLE_BUDGET):
    if p ** n > budget:
        raise BudgetExceeded(p ** n, budget)
    for t in itertools.product(range(p), repeat=n):
        yield np.array(t, dtype=DTYPE)


def brute_kernel(m, p: int) -> set:
    m = np.asarray(m, dtype=DTYPE) % p
    return {tuple(x) for x in vectors(m.shape[1], p) if not (m @ x % p).any()}


def brute_solutions(m, b, p: int) -> set:
    m = np.asarray(m, dtype=DTYPE) % p
    b = np.asarray(b, dtype=DTYPE) % p
    return {tuple(x) for x in vectors(m.shape[1], p) if ((m @ x - b) % p == 0).all()}


def _central(ring, e):
    p = ring.p
    return all(((l @ e - r @ e) % p == 0).all()
               for l, r in zip(ring.carrier.left_actions, ring.carrier.right_actions))


def _fixes(module, e, served):
    p = module.p
    act = module.act(e)
    return all(((act @ n - n) % p == 0).all() for n in np.asarray(served, dtype=DTYPE).reshape(-1, module.dim))


def brute_local_units(ring, modules, served, idempotent: bool = False, budget: int = ORACLE_BUDGET) -> list:
    """All central ``e`` acting as the identity on ``served`` in each module (lexicographic order)."""
    if not isinstance(modules, (tuple, list)):
        modules, served = (modules,), (served,)
    out = []
    for e in vectors(ring.dim, ring.p, budget):
        if not _central(ring, e):
            continue
        if not all(_fixes(m, e, s) for m, s in zip(modules, served)):
            continue
        if idempotent and ((ring.mul(e, e) - e) % ring.p).any():
            continue
        out.append(e)
    return out


def brute_local_counits(m: Comodule, served, budget: int = ORACLE_BUDGET) -> list:
    """Every bimodule map ``C -> A`` that is a counit on ``served``."""
    c, p = m.coring, m.p
    A = c.A
    n = A.dim * c.dim
    out = []
    for flat in vectors(n, p, budget):
        F = flat.reshape(A.dim, c.dim)
        left = all(((F @ L - A.left_mult(A.basis(i)) @ F) % p == 0).all()
                   for i, L in enumerate(c.carrier.left_actions))
        right = all(((F @ R - A.right_mult(A.basis(i)) @ F) % p == 0).all()
                    for i, R in enumerate(c.carrier.right_actions))
        if not (left and right):
            continue
        P = m.counit_map(F)
        if all(((P @ v - v) % p == 0).all() for v in np.asarray(served, dtype=DTYPE).reshape(-1, m.dim)):
            out.append(F)
    return out


def brute_dual_bases(pair: DualPair, served, b_linear: bool = False, idempotent: bool = False,
                     budget: int = ORACLE_BUDGET) -> list:
    """Elements ``e`` of ``M (x)_A M'`` with ``Phi(e) n = n`` on ``served``."""
    S = ElementaryRing(pair)
    p = pair.p
    out = []
    for e in vectors(S.dim, p, budget):
        if b_linear and not _central(S.ring, e):
            continue
        if idempotent and ((S.ring.mul(e, e) - e) % p).any():
            continue
        Phi = S.Phi(e)
        if all(((Phi @ n - n) % p == 0).all() for n in np.asarray(served, dtype=DTYPE).reshape(-1, pair.M.dim)):
            out.append(e)
    return out


def cross_validate(instance, budget: int = ORACLE_BUDGET) -> Report:
    """Run every applicable oracle on the structures of a loaded instance."""
    from . import exactla as la
    from .algebras import ModuleOver, RingOver
    from .dual_pairs import dual_basis_feasible
    from .local_costructure import local_counit_solutions
    from .local_units import unit_solutions
    from .errors import Infeasible

    rep = Report("oracle cross-validation")
    for name, obj in instance.structures.items():
        served = instance.served.get(name)
        if isinstance(obj, RingOver):
            mod = ModuleOver.regular(obj, "right")
            s = served if served is not None else la.identity(obj.dim)
            brute = {tuple(e) for e in brute_local_units(obj, mod, s, budget=budget)}
            try:
                fast = {tuple(e) for e in unit_solutions(obj, mod, s).members(budget)}
            except Infeasible:
                fast = set()
            rep.add(f"{name}: right local units", brute == fast, detail=len(brute))
        elif isinstance(obj, DualPair):
            s = served if served is not None else la.identity(obj.M.dim)
            brute = bool(brute_dual_bases(obj, s, budget=budget))
            rep.add(f"{name}: dual basis feasibility", brute == dual_basis_feasible(obj, s), detail=brute)
        elif isinstance(obj, Comodule) and obj.side == "right":
            s = served if served is not None else la.identity(obj.dim)
            brute = {tuple(F.reshape(-1)) for F in brute_local_counits(obj, s, budget)}
            fast = {tuple(F.reshape(-1)) for F in local_counit_solutions(obj, s)}
            rep.add(f"{name}: local counits", brute == fast, detail=len(brute))
        elif hasattr(obj, "delta") and hasattr(obj, "carrier"):
            cr = dual_ring(obj)
            brute_assoc = all(
                ((cr.mul(cr.mul(a, b), c) - cr.mul(a, cr.mul(b, c))) % obj.p == 0).all()
                for a in np.eye(cr.dim, dtype=DTYPE) for b in np.eye(cr.dim, dtype=DTYPE)
                for c in np.eye(cr.dim, dtype=DTYPE))
            rep.add(f"{name}: dual ring associative", brute_assoc)
    return rep
