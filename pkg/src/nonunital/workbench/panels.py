"""
Named checks and searches that run on a loaded instance.

Each panel returns a :class:`PanelResult` whose ``exit_code`` follows the
command-line convention: 0 when every asserted law holds, 1 for a violated
law, 2 for a certified infeasible search, 3 when the budget runs out and 4
for unusable input.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .. import exactla as la
from ..algebras import ModuleOver, RingOver, check_ring_over
from ..corings import PreCoring, check_coring, comatrix_coring, dorroh_coring, dual_ring
from ..dual_pairs import (
    DualPair,
    anh_marki_check,
    base_units_panel,
    check_alpha_condition,
    comatrix_context_panel,
    find_dual_basis,
    ground_units_panel,
    image_of_phi,
    two_sided_units_panel,
)
from ..errors import AxiomError, BudgetExceeded, Infeasible, Report
from ..local_costructure import cofirm_report, find_local_counit, has_local_counits
from ..local_units import DEFAULT_BUDGET, find_idempotent_local_unit, find_local_unit, regular_pair
from .instance import Instance, InstanceError, add_structure

EXIT_OK, EXIT_VIOLATED, EXIT_INFEASIBLE, EXIT_BUDGET, EXIT_INPUT = range(5)


@dataclass
class PanelResult:
    name: str
    conditions: dict = field(default_factory=dict)
    agreement: bool | None = None
    certificates: dict = field(default_factory=dict)
    timing: float = 0.0
    exit_code: int = EXIT_OK
    fragment: Instance | None = None
    report: Report | None = None
    message: str = ""

    def to_dict(self) -> dict:
        out = {
            "panel": self.name,
            "exit_code": self.exit_code,
            "timing": round(self.timing, 6),
            "certificates": {k: _plain(v) for k, v in self.certificates.items()},
        }
        if self.conditions:
            out["conditions"] = dict(self.conditions)
            out["agreement"] = self.agreement
        if self.report is not None:
            out["report"] = self.report.to_dict()
        if self.message:
            out["message"] = self.message
        if self.fragment is not None:
            from .instance import to_dict

            out["fragment"] = to_dict(self.fragment)
        return out

    def __str__(self):
        lines = [f"[{self.name}] exit {self.exit_code}" + (f": {self.message}" if self.message else "")]
        if self.report is not None:
            lines.append(str(self.report))
        for k, v in self.certificates.items():
            lines.append(f"  certificate {k} = {_plain(v)}")
        return "\n".join(lines)


def _plain(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.integer, np.bool_)):
        return v.item()
    return v


def _served(inst: Instance, name: str, dim: int):
    s = inst.served.get(name)
    return la.identity(dim) if s is None else s


def _from_report(name, rep: Report) -> PanelResult:
    res = PanelResult(name, dict(rep.conditions), rep.agreement if rep.conditions else None, report=rep)
    res.exit_code = EXIT_OK if rep.ok else EXIT_VIOLATED
    return res


# ---------------------------------------------------------------------------
# law checks

def laws_panel(inst: Instance, **_) -> PanelResult:
    """Check every declared algebra, bimodule and structure."""
    rep = Report("laws")
    for n, a in inst.algebras.items():
        bad = a.associativity_failure()
        rep.add(f"algebra {n}: associative", bad is None, detail=None if bad is None else list(bad))
        if a.unit is not None:
            rep.add(f"algebra {n}: unit", a.is_unit(a.unit))
    for n, m in inst.bimodules.items():
        rep.add(f"bimodule {n}", m.check().ok)
    for n, obj in inst.structures.items():
        if isinstance(obj, RingOver):
            sub = check_ring_over(obj)
        elif isinstance(obj, PreCoring):
            sub = check_coring(obj, counital=inst.counital.get(n, False))
        else:
            sub = obj.check()
        for k, v in sub.checks.items():
            rep.add(f"{n}: {k}", v)
    return _from_report("laws", rep)


def coring_panel(inst: Instance, target=None, **_) -> PanelResult:
    name, c = inst.first("coring", target)
    rep = check_coring(c, counital=inst.counital.get(name, False))
    return _from_report("coring", rep)


def dual_ring_panel(inst: Instance, target=None, **_) -> PanelResult:
    """The convolution ring of a coring: associativity, and its unit when there is a counit."""
    name, c = inst.first("coring", target)
    cr = dual_ring(c)
    rep = Report("dual ring")
    rep.add("associative", check_ring_over(cr.ring).ok)
    rep.details["dimension"] = cr.dim
    if c.epsilon is not None and cr.contains(c.epsilon):
        e = cr.coords(c.epsilon)
        rep.add("counit is the unit", all(la.equal(cr.mul(e, x), x, c.p) and la.equal(cr.mul(x, e), x, c.p)
                                          for x in la.identity(cr.dim)))
    res = _from_report("dual_ring", rep)
    res.certificates["unit"] = cr.unit
    return res


# ---------------------------------------------------------------------------
# dual pair panels

def _equivalence(name, rep: Report) -> PanelResult:
    res = _from_report(name, rep)
    if "precondition" in rep.details and not rep.conditions:
        res.message = rep.details["precondition"]
    return res


def comatrix_context(inst: Instance, target=None, **_) -> PanelResult:
    _, pair = inst.first("dual_pair", target)
    return _equivalence("comatrix_context", comatrix_context_panel(pair))


def _weak_and_strong(name, fn, inst, target, budget):
    _, pair = inst.first("dual_pair", target)
    weak, strong = fn(pair, False, budget), fn(pair, True, budget)
    rep = Report(name)
    for tag, sub in (("weak", weak), ("strong", strong)):
        for k, v in sub.checks.items():
            rep.add(f"{tag}: {k}", v)
        for k, v in sub.conditions.items():
            rep.details[f"{tag}: {k}"] = v
        if "precondition" in sub.details:
            rep.details["precondition"] = sub.details["precondition"]
    res = _equivalence(name, rep)
    res.conditions = {f"{t}: {k}": v for t, s in (("weak", weak), ("strong", strong))
                      for k, v in s.conditions.items()}
    res.agreement = weak.agreement and strong.agreement if res.conditions else None
    return res


def ground_units(inst, target=None, budget=DEFAULT_BUDGET, **_):
    return _weak_and_strong("ground_units", ground_units_panel, inst, target, budget)


def base_units(inst, target=None, budget=DEFAULT_BUDGET, **_):
    return _weak_and_strong("base_units", base_units_panel, inst, target, budget)


def two_sided_units(inst, target=None, budget=DEFAULT_BUDGET, **_):
    return _weak_and_strong("two_sided_units", two_sided_units_panel, inst, target, budget)


def alpha_panel(inst: Instance, target=None, **_) -> PanelResult:
    _, pair = inst.first("dual_pair", target)
    return _from_report("alpha", check_alpha_condition(pair.M, image_of_phi(pair)))


def anh_marki(inst: Instance, target=None, budget=DEFAULT_BUDGET, **_) -> PanelResult:
    if target is None and not any(isinstance(o, DualPair) for o in inst.structures.values()):
        _, M = inst.first("bimodule")
    else:
        _, M = inst.first("dual_pair", target)
        M = M.M
    return _from_report("anh_marki", anh_marki_check(M, budget=min(budget, 4096)))


def dual_basis(inst: Instance, target=None, budget=DEFAULT_BUDGET, **_) -> PanelResult:
    name, pair = inst.first("dual_pair", target)
    cert = find_dual_basis(pair, _served(inst, name, pair.M.dim), budget=budget)
    res = _from_report("dual_basis", cert.check())
    res.certificates["element"] = cert.element
    res.certificates["pairs"] = [[u.tolist(), f.tolist()] for u, f in cert.pairs]
    return res


# ---------------------------------------------------------------------------
# searches

def _ring_modules(ring: RingOver, side: str, served):
    if side == "both":
        return regular_pair(ring), (served, served)
    return ModuleOver.regular(ring, side), served


def _unit_search(inst, target, side, budget, idempotent):
    name, ring = inst.first("ring", target)
    served = _served(inst, name, ring.dim)
    mods, s = _ring_modules(ring, side or "right", served)
    if idempotent:
        cert = find_idempotent_local_unit(ring, mods, s, budget=budget)
    else:
        cert = find_local_unit(ring, mods, s)
    res = _from_report("find_idempotent_local_unit" if idempotent else "find_local_unit", cert.check())
    res.certificates["element"] = cert.element
    res.certificates["side"] = cert.side
    return res


def local_unit(inst, target=None, side=None, budget=DEFAULT_BUDGET, **_):
    return _unit_search(inst, target, side, budget, False)


def idempotent_local_unit(inst, target=None, side=None, budget=DEFAULT_BUDGET, **_):
    return _unit_search(inst, target, side, budget, True)


def local_counit(inst: Instance, target=None, budget=DEFAULT_BUDGET, **_) -> PanelResult:
    name, m = inst.first("comodule", target)
    if m.side != "right":
        raise InstanceError("local counits are searched on right comodules", ("structures", name), inst.source,
                            "reference")
    cert = find_local_counit(m, _served(inst, name, m.dim), budget=budget)
    res = _from_report("local_counit", cert.check())
    res.certificates["epsilon"] = cert.epsilon
    return res


def cofirm(inst: Instance, target=None, budget=DEFAULT_BUDGET, **_) -> PanelResult:
    """Cofirmness next to elementwise local-counit feasibility."""
    name, m = inst.first("comodule", target)
    rep = cofirm_report(m)
    res = PanelResult("cofirm", report=rep)
    res.conditions = {"cofirm": rep.ok}
    if m.side == "right":
        res.conditions["local counits on every element"] = has_local_counits(m, elementwise=True, budget=budget)
    res.agreement = len(set(res.conditions.values())) == 1
    res.exit_code = EXIT_OK if res.agreement else EXIT_VIOLATED
    return res


# ---------------------------------------------------------------------------
# constructions

def dorroh(inst: Instance, target=None, **_) -> PanelResult:
    """Adjoin a counit; the counital coring is returned as an instance fragment."""
    _, c = inst.first("coring", target)
    d = dorroh_coring(c)
    rep = check_coring(d.coring, counital=True)
    for k, v in d.check_coideal().checks.items():
        rep.add(f"coideal: {k}", v)
    res = _from_report("dorroh", rep)
    frag = Instance(c.p)
    add_structure(frag, "C_hat", d.coring, counital=True)
    res.fragment = frag
    return res


def comatrix(inst: Instance, target=None, **_) -> PanelResult:
    """Comatrix coring of the module of a dual pair (or of a bimodule)."""
    if target is None and not any(isinstance(o, DualPair) for o in inst.structures.values()):
        _, source = inst.first("bimodule")
    else:
        _, source = inst.first("dual_pair", target)
    cm = comatrix_coring(source)
    rep = check_coring(cm.coring, counital=True)
    rep.add("M is a right comodule", cm.right_comodule.check().ok)
    rep.add("M* is a left comodule", cm.left_comodule.check().ok)
    res = _from_report("comatrix", rep)
    res.certificates["dual basis element"] = cm.element
    frag = Instance(cm.coring.p)
    add_structure(frag, "C", cm.coring, counital=True)
    res.fragment = frag
    return res


def oracle_panel(inst: Instance, budget=DEFAULT_BUDGET, **_) -> PanelResult:
    from ..oracle import cross_validate

    return _from_report("oracle", cross_validate(inst, budget=budget))


PANELS = {
    "laws": laws_panel,
    "coring": coring_panel,
    "dual_ring": dual_ring_panel,
    "comatrix_context": comatrix_context,
    "ground_units": ground_units,
    "base_units": base_units,
    "two_sided_units": two_sided_units,
    "alpha": alpha_panel,
    "anh_marki": anh_marki,
    "dual_basis": dual_basis,
    "find_local_unit": local_unit,
    "find_idempotent_local_unit": idempotent_local_unit,
    "local_counit": local_counit,
    "cofirm": cofirm,
    "dorroh": dorroh,
    "comatrix": comatrix,
    "oracle": oracle_panel,
}


def run(name: str, instance: Instance, budget: int = DEFAULT_BUDGET, side: str | None = None,
        target: str | None = None) -> PanelResult:
    """Run a panel and translate failures into exit codes."""
    if name not in PANELS:
        raise KeyError(f"unknown panel {name!r}; available: {', '.join(sorted(PANELS))}")
    t0 = time.perf_counter()
    try:
        res = PANELS[name](instance, target=target, side=side, budget=budget)
    except Infeasible as exc:
        res = PanelResult(name, exit_code=EXIT_INFEASIBLE, message=f"infeasible: {exc}")
    except BudgetExceeded as exc:
        res = PanelResult(name, exit_code=EXIT_BUDGET, message=f"budget exceeded: {exc}")
    except InstanceError as exc:
        res = PanelResult(name, exit_code=EXIT_INPUT, message=str(exc))
    except AxiomError as exc:
        res = PanelResult(name, exit_code=EXIT_VIOLATED, message=f"law violated: {exc}")
    res.timing = time.perf_counter() - t0
    return res
