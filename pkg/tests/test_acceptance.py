"""
Acceptance suite.  Each test carries a ``criterion`` marker; the terminal
summary prints one PASS/FAIL line per criterion.  Everything here is
exhaustive over F_2 (plus a few F_3 cases) or driven by fixed seeds.
"""

import itertools
from functools import lru_cache

import numpy as np
import pytest

from nonunital import exactla as la
from nonunital import library
from nonunital.algebras import Algebra, Bimodule, ModuleOver, RingOver
from nonunital.corings import (
    Comodule,
    PreCoring,
    check_coring,
    check_coring_morphism,
    colinear_maps,
    comatrix_coring,
    dorroh_coring,
    grouplike_coring,
    is_coassociative,
    trivial_coring,
)
from nonunital.dual_pairs import (
    DualPair,
    ElementaryRing,
    base_units_panel,
    comatrix_context_panel,
    dual_basis_feasible,
    ground_units_panel,
    two_sided_units_panel,
)
from nonunital.errors import AxiomError, Infeasible
from nonunital.local_costructure import (
    ComultFamily,
    associate_check,
    associate_transfer,
    check_eps_comult,
    cofirm_check,
    coassociate_check,
    combine_mults,
    combine_right_comults,
    has_local_counits,
    is_associative,
    is_coassociative as coassociative_with,
    local_counit_solutions,
    projection,
    sandwich_mult,
    strong_restriction,
    transfer_comult,
)
from nonunital.local_costructure import _right_by
from nonunital.local_units import (
    build_idempotent_two_sided_unit,
    build_local_unit,
    find_idempotent_local_unit,
    find_local_unit,
    regular_pair,
)
from nonunital.oracle import brute_dual_bases, brute_kernel, brute_local_counits, brute_local_units, brute_solutions
from nonunital.workbench import generate
from nonunital.workbench.generate import VARIANTS, random_algebra, random_precoring

P = 2
BUDGET = 4096


def criterion(n, title):
    return pytest.mark.criterion(n, title)


# ---------------------------------------------------------------------------
# exhaustive small structures over F_2, shared by several criteria

def _bits(n):
    return itertools.product(range(P), repeat=n)


@lru_cache(maxsize=None)
def coassociative_deltas(dim):
    """Every coassociative comultiplication on k^dim (dim <= 2)."""
    V = Bimodule.vector_space(dim, P)
    out = []
    for bits in _bits(dim ** 3):
        D = np.array(bits, dtype=np.int64).reshape(dim * dim, dim)
        if is_coassociative(PreCoring(V, D, None)):
            out.append(D)
    return tuple(out)


def precoring(D, eps=None):
    dim = D.shape[1]
    return PreCoring(Bimodule.vector_space(dim, P), D, None if eps is None else np.array([eps]))


def counits(dim):
    return [list(e) for e in _bits(dim)]


@lru_cache(maxsize=None)
def associative_mults():
    """Every associative multiplication on k^2, as a 2 x 4 matrix."""
    V = Bimodule.vector_space(2, P)
    out = []
    for bits in _bits(8):
        mu = np.array(bits, dtype=np.int64).reshape(2, 4)
        if is_associative(V, mu):
            out.append(mu)
    return tuple(out)


def fixed(P_, dim):
    return [v for v in la.all_vectors(dim, P) if la.equal(P_ @ v % P, v, P)]


def comodules_over(c: PreCoring, dim):
    """Every coassociative right coaction of k^dim over ``c`` (vectorised filter, then validated)."""
    dc = c.dim
    n = dim * dc
    cands = np.array(list(_bits(n * dim)), dtype=np.int64).reshape(-1, dim, dc, dim)
    # lhs[m', c', c, x] = sum_m rho[(m', c'), m] rho[(m, c), x]
    lhs = np.einsum("nacm,nmbx->nacbx", cands, cands) % P
    Dl = c.delta_raw.reshape(dc, dc, dc)
    rhs = np.einsum("kle,nmex->nmklx", Dl, cands) % P
    keep = (lhs == rhs).reshape(len(cands), -1).all(axis=1)
    V = Bimodule.vector_space(dim, P)
    out = []
    for rho in cands[keep]:
        m = Comodule(c, V, rho.reshape(n, dim))
        assert m.check().ok
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# 1

@criterion(1, "kernel and affine solve agree with enumeration (all matrices up to 3x3 over F2, 2x2 over F3)")
def test_linear_algebra_oracle_equivalence(note):
    cases = mismatches = 0
    for p, top in ((2, 3), (3, 2)):
        for r in range(1, top + 1):
            for c in range(1, top + 1):
                for m in la.all_matrices(r, c, p):
                    ker = {tuple(v) for v in la.kernel(m, p).elements()}
                    mismatches += ker != brute_kernel(m, p)
                    cases += 1
                    for b in la.all_vectors(r, p):
                        brute = brute_solutions(m, b, p)
                        try:
                            fast = {tuple(v) for v in la.solve_affine(m, b, p).members()}
                        except Infeasible:
                            fast = set()
                        mismatches += fast != brute
                        cases += 1
    note(f"{cases} cases, {mismatches} mismatches")
    assert cases >= 4096
    assert mismatches == 0


# ---------------------------------------------------------------------------
# 2

@criterion(2, "constructive local-unit pipeline matches the exhaustive oracle on 200 seeds")
def test_local_unit_pipeline_matches_oracle(note):
    feasible = 0
    for seed in range(200):
        rng = np.random.default_rng(seed)
        r = RingOver.from_algebra(random_algebra(rng, 1 + seed % 3, P))
        served = rng.integers(0, P, size=(int(rng.integers(1, 3)), r.dim))
        for side in ("right", "left"):
            mod = ModuleOver.regular(r, side)
            exists = bool(brute_local_units(r, mod, served))
            try:
                assert build_local_unit(r, mod, served).check().ok
                built = True
            except Infeasible:
                built = False
            assert built == exists, (seed, side)
            feasible += exists
            brute_idem = brute_local_units(r, mod, served, idempotent=True)
            try:
                found = find_idempotent_local_unit(r, mod, served).element.tolist()
            except Infeasible:
                found = None
            assert found == (min(e.tolist() for e in brute_idem) if brute_idem else None), (seed, side)
        two = regular_pair(r)
        brute_two = brute_local_units(r, two, (served, served), idempotent=True)
        try:
            cert = build_idempotent_two_sided_unit(r, served)
            assert cert.check().ok
            built = True
        except Infeasible:
            built = False
        assert built == bool(brute_two), seed
    note(f"{feasible}/400 one-sided instances feasible")


# ---------------------------------------------------------------------------
# 3 and 4

def seeded_pairs(n=100):
    bases = ("k", "kxk", "m2")
    variants = VARIANTS["dual_pair"]
    for seed in range(n):
        variant = variants[seed % len(variants)]
        base = bases[(seed // len(variants)) % len(bases)]
        inst = generate("dual_pair", seed, 1 + seed % 3, variant=variant, base=base)
        yield seed, variant, inst.first("dual_pair")[1]


def _noncommutative(A: Algebra):
    return any(not la.equal(A.mul(A.basis(i), A.basis(j)), A.mul(A.basis(j), A.basis(i)), A.p)
               for i in range(A.dim) for j in range(A.dim))


@criterion(3, "comatrix-context panel: the six conditions agree on 100 seeded dual pairs")
def test_comatrix_context_panel_agreement(note):
    seen, all_true, noncomm = set(), 0, 0
    for seed, variant, pair in seeded_pairs():
        rep = comatrix_context_panel(pair)
        assert len(rep.conditions) == 6
        assert rep.agreement, (seed, rep.conditions)
        seen.add(variant)
        all_true += all(rep.conditions.values())
        noncomm += _noncommutative(pair.A)
    assert {"canonical", "zero"} <= seen and noncomm > 0
    note(f"{all_true} all-true, {100 - all_true} all-false, {noncomm} over noncommutative A")


@criterion(4, "dual-basis feasibility equals elementary-ring local-unit feasibility (weak and idempotent)")
def test_dual_basis_unit_bridge(note):
    checked = 0
    for seed, variant, pair in seeded_pairs():
        S = ElementaryRing(pair)
        rng = np.random.default_rng(seed)
        targets = [la.identity(pair.M.dim), rng.integers(0, P, size=(1, pair.M.dim))]
        for served in targets:
            db = dual_basis_feasible(pair, served)
            try:
                find_local_unit(S.ring, S.M_module, served)
                unit = True
            except Infeasible:
                unit = False
            assert db == unit == bool(brute_dual_bases(pair, served)), seed
            db_idem = dual_basis_feasible(pair, served, require_idempotent=True, budget=BUDGET)
            try:
                find_idempotent_local_unit(S.ring, S.M_module, served, budget=BUDGET)
                unit_idem = True
            except Infeasible:
                unit_idem = False
            assert db_idem == unit_idem, seed
            checked += 1
        for panel in (ground_units_panel, base_units_panel, two_sided_units_panel):
            for strong in (False, True):
                assert panel(pair, strong=strong, budget=BUDGET).agreement, (seed, panel.__name__, strong)
    note(f"{checked} served sets")


# ---------------------------------------------------------------------------
# 5

def projectives():
    k, kk = library.field(P), library.kxk(P)
    for n in (1, 2, 3):
        yield "k", Bimodule.vector_space(n, P)
    for n in (1, 2, 3):
        for pieces in itertools.combinations_with_replacement((0, 1), n):
            acts = [np.diag([int(j == t) for j in pieces]).astype(np.int64) for t in range(2)]
            yield "kxk", Bimodule.right_module(kk, acts, name=f"P{pieces}")
    yield "m2", library.row_vectors(P)
    yield "k", k.regular


@criterion(5, "comatrix corings of f.g. projectives over k, kxk, M2 pass the coring and comodule laws")
def test_comatrix_corings(note):
    count = 0
    for base, M in projectives():
        cm = comatrix_coring(M)
        assert check_coring(cm.coring, counital=True).ok, (base, M.name)
        assert cm.right_comodule.check().ok and cm.left_comodule.check().ok, (base, M.name)
        count += 1
    note(f"{count} modules")


# ---------------------------------------------------------------------------
# 6

@criterion(6, "Dorroh coring of 50 pre-corings: axioms, morphisms, hat/unhat, coideal")
def test_dorroh_construction(note):
    maps = 0
    for seed in range(50):
        rng = np.random.default_rng(seed)
        c = random_precoring(rng, 1 + seed % 3, P)
        d = dorroh_coring(c)
        assert check_coring(d.coring, counital=True).ok
        assert check_coring_morphism(d.inclusion, trivial_coring(c.A), d.coring).ok
        pi = check_coring_morphism(d.projection, d.coring, c)
        assert pi.checks["bilinear"] and pi.checks["comultiplicative"]
        assert d.check_coideal().ok
        m = Comodule.regular(c)
        mh = d.hat(m)
        assert mh.check().ok
        assert la.equal(d.unhat(mh).coaction, m.coaction, P)
        maps_m = colinear_maps(m, m)
        assert maps_m.equals(colinear_maps(mh, mh))
        for _ in range(20):
            f = maps_m.vector(rng.integers(0, P, size=maps_m.dim)) if maps_m.dim else \
                np.zeros(m.dim * m.dim, dtype=np.int64)
            assert colinear_maps(mh, mh).contains(f)
            assert colinear_maps(d.unhat(mh), d.unhat(mh)).contains(f)
            maps += 1
    note(f"{maps} colinear maps transported")


# ---------------------------------------------------------------------------
# 7

def grouplike_family():
    g = grouplike_coring(3, P)
    parts = []
    for i in range(3):
        D = np.zeros((9, 3), dtype=np.int64)
        D[i * 3 + i, i] = 1
        parts.append(D)
    return ComultFamily.span(g, parts, name="grouplike pieces")


def comult_instances():
    """(coring, Delta, Delta') over every counit and coassociative pair on k^1, k^2, plus dim-3 families."""
    for dim in (1, 2):
        deltas = coassociative_deltas(dim)
        for eps in counits(dim):
            for D in deltas:
                for Dp in deltas:
                    yield precoring(D, eps), D, Dp
    fam = grouplike_family()
    for eps in counits(3):
        c = fam.coring.with_epsilon(np.array([eps]))
        for x in _bits(fam.dim):
            for y in _bits(fam.dim):
                yield c, fam.member(x), fam.member(y)
    fam = ComultFamily.comatrix(DualPair.canonical(library.kxk(P).regular))
    for x in _bits(fam.dim):
        for y in _bits(fam.dim):
            yield fam.coring, fam.member(x), fam.member(y)


@criterion(7, "combination formulas are (co)associative and serve both sets; bad premises rejected")
def test_combination_formulas(note):
    combined = rejected = literal_bad = 0
    for c, D, Dp in comult_instances():
        if not coassociate_check(c, D, Dp):
            with pytest.raises(AxiomError):
                combine_right_comults(c, D, Dp)
            rejected += 1
            continue
        new = combine_right_comults(c, D, Dp)
        assert coassociative_with(c, new)
        psi, psi_p, psi_new = projection(c, D), projection(c, Dp), projection(c, new)
        for x in la.all_vectors(c.dim, P):
            defect = (x - psi @ x) % P
            serves_x = la.equal(psi @ x % P, x, P) or la.equal(psi_p @ defect % P, defect, P)
            if serves_x:
                assert la.equal(psi_new @ x % P, x, P)
        try:
            combine_right_comults(c, D, Dp, literal=True)
        except AxiomError:
            literal_bad += 1
        combined += 1
    # multiplications: every associative pair on k^2 with every unit, sandwich families on small rings
    V = Bimodule.vector_space(2, P)
    mults = associative_mults()
    for mu1 in mults:
        for mu2 in mults:
            if not associate_check(V, mu1, mu2):
                with pytest.raises(AxiomError):
                    combine_mults(V, mu1, mu2, [0, 0])
                rejected += 1
                continue
            for e in la.all_vectors(2, P):
                _check_mult_combination(V, mu1, mu2, e)
                combined += 1
    for r in small_rings():
        for x in la.all_vectors(r.dim, P):
            for y in la.all_vectors(r.dim, P):
                mu1, mu2 = sandwich_mult(r, x), sandwich_mult(r, y)
                for e in la.all_vectors(r.dim, P):
                    _check_mult_combination(r.carrier, mu1, mu2, e)
                    combined += 1
    note(f"{combined} combined, {rejected} rejected; literal cross term non-coassociative in {literal_bad}")


def _check_mult_combination(V, mu1, mu2, e):
    mu = combine_mults(V, mu1, mu2, e)
    assert is_associative(V, mu)
    r1, r2, r = _right_by(V, mu1, e), _right_by(V, mu2, e), _right_by(V, mu, e)
    for t in la.all_vectors(V.dim, P):
        d = (t - r1 @ t) % P
        if la.equal(r1 @ t % P, t, P) or la.equal(r2 @ d % P, d, P):
            assert la.equal(r @ t % P, t, P)


def small_rings():
    out = [library.row_ring(P), library.nilpotent(P)]
    for alg in (Algebra.ground(P), Algebra.zero_product(1, P), Algebra.diagonal(2, P),
                Algebra.truncated_polynomial(2, P), Algebra.truncated_polynomial(3, P), Algebra.diagonal(3, P),
                Algebra.from_matrices([[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [0, 1]]], P)):
        out.append(RingOver.from_algebra(alg))
    return out


# ---------------------------------------------------------------------------
# 8

def certificates():
    """Every one-sided and two-sided certificate on the exhaustive dim <= 2 instances, served = fixed points."""
    for dim in (1, 2):
        for eps in counits(dim):
            for D in coassociative_deltas(dim):
                c = precoring(D, eps)
                for side in ("right", "left"):
                    yield check_eps_comult(c, D, fixed(projection(c, D, side), dim), side)
                both = [v for v in fixed(projection(c, D, "right"), dim)
                        if la.equal(projection(c, D, "left") @ v % P, v, P)]
                yield check_eps_comult(c, D, both, "two-sided")
    fam = grouplike_family()
    for eps in counits(3):
        c = fam.coring.with_epsilon(np.array([eps]))
        for x in _bits(fam.dim):
            D = fam.member(x)
            yield check_eps_comult(c, D, fixed(projection(c, D), 3), "right")
    cm = comatrix_coring(Bimodule.vector_space(2, P)).coring
    yield check_eps_comult(cm, cm.delta, la.identity(4), "two-sided")


@criterion(8, "restriction to the image of an idempotent certificate is a summand with the promised laws")
def test_restrictions(note):
    counts = {"right": 0, "left": 0, "two-sided": 0}
    for cert in certificates():
        if not cert.idempotent:
            continue
        r = strong_restriction(cert)
        assert r.report.ok, (cert.side, cert.delta.tolist(), r.report.failures)
        assert r.report.checks["direct summand"]
        counts[cert.side] += 1
    note(", ".join(f"{v} {k}" for k, v in counts.items()))


# ---------------------------------------------------------------------------
# 9

def _subsets(dim):
    vecs = [v for v in la.all_vectors(dim, P)]
    for r in range(len(vecs) + 1):
        for s in itertools.combinations(range(len(vecs)), r):
            yield np.array([vecs[i] for i in s], dtype=np.int64).reshape(-1, dim)


@criterion(9, "counits are units of the dual ring; associating and strong transfers to multiplications")
def test_duality_transfers(note):
    served_sets = transfers = pairs = 0
    comodules = []
    for dim in (1, 2):
        for D in coassociative_deltas(dim):
            comodules.append(Comodule.regular(precoring(D)))
    for D in coassociative_deltas(1):
        comodules.extend(comodules_over(precoring(D), 2))
    for m in comodules:
        for served in _subsets(m.dim):
            brute = {tuple(F.reshape(-1)) for F in brute_local_counits(m, served)}
            fast = {tuple(F.reshape(-1)) for F in local_counit_solutions(m, served)}
            assert brute <= fast and fast <= brute
            served_sets += 1
    for dim in (1, 2):
        deltas = coassociative_deltas(dim)
        c = precoring(deltas[0])
        for D in deltas:
            for Dp in deltas:
                if coassociate_check(c, D, Dp):
                    assert associate_transfer(c, D, Dp)
                    pairs += 1
    for cert in certificates():
        if cert.side != "right":
            continue
        t = transfer_comult(cert)
        assert t.report.ok, t.report.failures
        assert la.equal(t.unit_action, projection(cert.coring, cert.delta), P)
        transfers += 1
    note(f"{served_sets} served sets, {pairs} coassociating pairs, {transfers} transfers")


# ---------------------------------------------------------------------------
# 10

@criterion(10, "cofirmness equals elementwise local counits on all dim <= 2 comodules")
def test_cofirm_equals_local_counits(note):
    total = cofirm = 0
    for dc in (1, 2):
        for D in coassociative_deltas(dc):
            c = precoring(D)
            if not has_local_counits(Comodule.regular(c)):
                continue
            for dim in (1, 2):
                for m in comodules_over(c, dim):
                    a = cofirm_check(m)
                    assert a == has_local_counits(m, elementwise=True)
                    total += 1
                    cofirm += a
    note(f"{total} comodules, {cofirm} cofirm")
