"""
JSON instance files.

A file holds a prime ``p`` and four name spaces: ``algebras``,
``bimodules``, ``maps`` and ``structures``.  Matrices are row-major nested
lists of integers in ``[0, p)``; the ground field is always available as
``"k"``.  Structures are rings, dual pairs, corings and comodules, and any of
them may carry a ``served`` list of vectors used by the search panels.

Comultiplications and coactions are written on the quotient coordinates of
the tensor products (the non-pivot raw coordinates, see ``Tensor``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..algebras import Algebra, Bimodule, BimoduleMap, RingOver, check_ring_over, tensor
from ..corings import Comodule, PreCoring, check_coring
from ..dual_pairs import DualPair
from ..errors import AxiomError
from ..exactla import DTYPE, check_prime

FORMAT = "nonunital-instance/1"
KINDS = ("ring", "dual_pair", "coring", "comodule")


class InstanceError(Exception):
    """A located problem with an instance file.

    ``kind`` is ``parse``, ``reference``, ``shape`` or ``axiom``.
    """

    def __init__(self, message, key=(), file=None, kind="parse"):
        self.key = tuple(key)
        self.file = file
        self.kind = kind
        where = "/".join(str(k) for k in self.key) or "<root>"
        prefix = f"{file}: " if file else ""
        super().__init__(f"{prefix}{where}: {message}")


@dataclass
class Instance:
    p: int
    algebras: dict = field(default_factory=dict)
    bimodules: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    structures: dict = field(default_factory=dict)
    served: dict = field(default_factory=dict)
    counital: dict = field(default_factory=dict)
    source: str | None = None

    def first(self, kind: str, name: str | None = None):
        """The structure called ``name``, or the first one of the given kind."""
        types = {"ring": RingOver, "dual_pair": DualPair, "coring": PreCoring, "comodule": Comodule,
                 "bimodule": Bimodule, "algebra": Algebra}
        pool = self.bimodules if kind == "bimodule" else self.algebras if kind == "algebra" else self.structures
        if name is not None:
            obj = pool.get(name)
            if obj is None or not isinstance(obj, types[kind]):
                raise InstanceError(f"no {kind} named {name!r}", key=(kind, name), file=self.source,
                                    kind="reference")
            return name, obj
        for n, obj in pool.items():
            if isinstance(obj, types[kind]):
                if kind == "algebra" and n == "k" and len(pool) > 1:
                    continue
                return n, obj
        raise InstanceError(f"no {kind} in the instance", key=(kind,), file=self.source, kind="reference")


# ---------------------------------------------------------------------------
# reading

def _matrix(value, shape, p, key, file):
    try:
        arr = np.array(value, dtype=DTYPE)
    except (TypeError, ValueError):
        raise InstanceError("not an integer array", key, file, "parse") from None
    if arr.size == 0 and 0 in shape:
        return np.zeros(shape, dtype=DTYPE)
    if arr.shape != tuple(shape):
        raise InstanceError(f"shape {arr.shape}, expected {tuple(shape)}", key, file, "shape")
    if ((arr < 0) | (arr >= p)).any():
        raise InstanceError(f"entries must lie in [0, {p})", key, file, "parse")
    return arr


def _get(d, name, key, file, default=...):
    if not isinstance(d, dict):
        raise InstanceError("expected an object", key, file, "parse")
    if name not in d:
        if default is not ...:
            return default
        raise InstanceError(f"missing key {name!r}", key + (name,), file, "parse")
    return d[name]


def _ref(pool, name, key, file, what):
    if name not in pool:
        raise InstanceError(f"unknown {what} {name!r}", key, file, "reference")
    return pool[name]


def _axiom(exc: AxiomError, key, file):
    law = exc.law if exc.where is None else f"{exc.law} at {exc.where}"
    return InstanceError(f"axiom failure: {law}", key, file, "axiom")


def loads_instance(text: str, file=None, validate: bool = True) -> Instance:
    """Parse and resolve an instance; with ``validate`` every structure must pass its laws."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"invalid JSON ({exc.msg} at line {exc.lineno})", (), file, "parse") from None
    return from_dict(data, file=file, validate=validate)


def load_instance(path, validate: bool = True) -> Instance:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"cannot read file ({exc.strerror})", (), str(path), "parse") from None
    return loads_instance(text, file=str(path), validate=validate)


def from_dict(data, file=None, validate: bool = True) -> Instance:
    p = _get(data, "p", (), file)
    try:
        p = check_prime(int(p))
    except (TypeError, ValueError):
        raise InstanceError("p must be a prime", ("p",), file, "parse") from None
    inst = Instance(p, source=file)
    inst.algebras["k"] = Algebra.ground(p)

    for name, entry in sorted(_get(data, "algebras", (), file, {}).items()):
        key = ("algebras", name)
        struct = _get(entry, "structure", key, file)
        dim = int(_get(entry, "dim", key, file, len(struct)))
        c = _matrix(struct, (dim, dim, dim), p, key + ("structure",), file)
        unit = entry.get("unit")
        if unit is not None:
            unit = _matrix(unit, (dim,), p, key + ("unit",), file)
        alg = Algebra(c, p, unit, name=name)
        if validate:
            try:
                alg.validate()
            except AxiomError as exc:
                raise _axiom(exc, key, file) from None
        inst.algebras[name] = alg

    for name, entry in sorted(_get(data, "bimodules", (), file, {}).items()):
        key = ("bimodules", name)
        dim = int(_get(entry, "dim", key, file))
        left = _ref(inst.algebras, _get(entry, "left", key, file, "k"), key + ("left",), file, "algebra")
        right = _ref(inst.algebras, _get(entry, "right", key, file, "k"), key + ("right",), file, "algebra")
        acts = {}
        for side, alg in (("left_actions", left), ("right_actions", right)):
            raw = entry.get(side)
            if raw is None and alg.dim == 1:
                acts[side] = np.eye(dim, dtype=DTYPE)[None]
            else:
                acts[side] = _matrix(raw if raw is not None else [], (alg.dim, dim, dim), p, key + (side,), file)
        m = Bimodule(left, right, list(acts["left_actions"]), list(acts["right_actions"]), name=name)
        if validate:
            try:
                m.validate()
            except AxiomError as exc:
                raise _axiom(exc, key, file) from None
        inst.bimodules[name] = m

    for name, entry in sorted(_get(data, "maps", (), file, {}).items()):
        key = ("maps", name)
        src = _ref(inst.bimodules, _get(entry, "source", key, file), key + ("source",), file, "bimodule")
        tgt = _ref(inst.bimodules, _get(entry, "target", key, file), key + ("target",), file, "bimodule")
        mat = _matrix(_get(entry, "matrix", key, file), (tgt.dim, src.dim), p, key + ("matrix",), file)
        f = BimoduleMap(src, tgt, mat)
        if validate and not f.check().ok:
            raise InstanceError(f"axiom failure: {f.check().failures[0]}", key, file, "axiom")
        inst.maps[name] = f

    structures = _get(data, "structures", (), file, {})
    order = sorted(structures, key=lambda n: (_kind_rank(structures[n], ("structures", n), file), n))
    for name in order:
        entry = structures[name]
        key = ("structures", name)
        obj = _build_structure(inst, entry, key, file)
        if isinstance(obj, PreCoring):
            inst.counital[name] = bool(entry.get("counital", False))
        if validate:
            _validate_structure(obj, key, file, inst.counital.get(name, False))
        inst.structures[name] = obj
        if "served" in entry:
            dim = _served_dim(obj)
            rows = entry["served"]
            inst.served[name] = _matrix(rows, (len(rows), dim), p, key + ("served",), file)
    return inst


def _kind_rank(entry, key, file):
    kind = _get(entry, "kind", key, file)
    if kind not in KINDS:
        raise InstanceError(f"unknown kind {kind!r} (expected one of {', '.join(KINDS)})", key + ("kind",), file)
    return KINDS.index(kind)


def _served_dim(obj):
    if isinstance(obj, DualPair):
        return obj.M.dim
    return obj.dim


def _build_structure(inst, entry, key, file):
    p = inst.p
    kind = entry["kind"]
    bms = inst.bimodules
    try:
        if kind == "ring":
            if "algebra" in entry:
                alg = _ref(inst.algebras, entry["algebra"], key + ("algebra",), file, "algebra")
                return RingOver.from_algebra(alg)
            base = _ref(inst.algebras, _get(entry, "base", key, file, "k"), key + ("base",), file, "algebra")
            car = _ref(bms, _get(entry, "carrier", key, file), key + ("carrier",), file, "bimodule")
            d = car.dim
            c = _matrix(_get(entry, "structure", key, file), (d, d, d), p, key + ("structure",), file)
            return RingOver(base, car, c, name=key[-1])
        if kind == "dual_pair":
            M = _ref(bms, _get(entry, "M", key, file), key + ("M",), file, "bimodule")
            Mp = _ref(bms, _get(entry, "Mp", key, file), key + ("Mp",), file, "bimodule")
            G = _matrix(_get(entry, "pairing", key, file), (M.right.dim, Mp.dim, M.dim), p,
                        key + ("pairing",), file)
            return DualPair(M, Mp, G, name=key[-1])
        if kind == "coring":
            C = _ref(bms, _get(entry, "carrier", key, file), key + ("carrier",), file, "bimodule")
            T = tensor(C, C)
            delta = _matrix(_get(entry, "delta", key, file), (T.dim, C.dim), p, key + ("delta",), file)
            eps = entry.get("epsilon")
            if eps is not None:
                eps = _matrix(eps, (C.left.dim, C.dim), p, key + ("epsilon",), file)
            return PreCoring(C, delta, eps, name=key[-1])
        if kind == "comodule":
            cname = _get(entry, "coring", key, file)
            c = inst.structures.get(cname)
            if not isinstance(c, PreCoring):
                raise InstanceError(f"unknown coring {cname!r}", key + ("coring",), file, "reference")
            M = _ref(bms, _get(entry, "carrier", key, file), key + ("carrier",), file, "bimodule")
            side = entry.get("side", "right")
            if side not in ("right", "left"):
                raise InstanceError("side must be 'right' or 'left'", key + ("side",), file)
            T = tensor(M, c.carrier) if side == "right" else tensor(c.carrier, M)
            rho = _matrix(_get(entry, "coaction", key, file), (T.dim, M.dim), p, key + ("coaction",), file)
            return Comodule(c, M, rho, side, bool(entry.get("counital", False)))
    except AxiomError as exc:
        raise InstanceError(str(exc), key, file, "shape") from None
    raise InstanceError(f"unknown kind {kind!r}", key + ("kind",), file)


def _validate_structure(obj, key, file, counital=False):
    if isinstance(obj, RingOver):
        rep = check_ring_over(obj)
    elif isinstance(obj, DualPair):
        rep = obj.check()
    elif isinstance(obj, PreCoring):
        rep = check_coring(obj, counital=counital)
    else:
        rep = obj.check()
    if not rep.ok:
        raise InstanceError(f"axiom failure: {rep.failures[0]}", key, file, "axiom")


# ---------------------------------------------------------------------------
# writing

def _lst(a, p):
    return (np.asarray(a, dtype=DTYPE) % p).tolist()


class _Names:
    def __init__(self, inst: Instance):
        self.inst = inst

    def algebra(self, alg: Algebra) -> str:
        for n, a in self.inst.algebras.items():
            if a is alg or (a.same_as(alg) and _same_unit(a, alg)):
                return n
        name = _fresh(alg.name or "A", self.inst.algebras)
        self.inst.algebras[name] = alg
        return name

    def bimodule(self, m: Bimodule) -> str:
        for n, b in self.inst.bimodules.items():
            if b is m:
                return n
        self.algebra(m.left)
        self.algebra(m.right)
        name = _fresh(m.name or "M", self.inst.bimodules)
        self.inst.bimodules[name] = m
        return name


def _same_unit(a, b):
    if a.unit is None or b.unit is None:
        return a.unit is None and b.unit is None
    return np.array_equal(a.unit, b.unit)


def _fresh(base, pool):
    base = "".join(ch if ch.isalnum() or ch in "_-" else "_" for ch in base) or "x"
    if base not in pool:
        return base
    i = 1
    while f"{base}_{i}" in pool:
        i += 1
    return f"{base}_{i}"


def add_structure(inst: Instance, name: str, obj, served=None, counital: bool = False) -> str:
    """Register ``obj`` (and everything it references) under a fresh name."""
    names = _Names(inst)
    if isinstance(obj, Algebra):
        return names.algebra(obj)
    if isinstance(obj, Bimodule):
        return names.bimodule(obj)
    if isinstance(obj, RingOver):
        names.algebra(obj.base)
        names.bimodule(obj.carrier)
    elif isinstance(obj, DualPair):
        names.bimodule(obj.M)
        names.bimodule(obj.Mp)
    elif isinstance(obj, PreCoring):
        names.bimodule(obj.carrier)
    elif isinstance(obj, Comodule):
        if not any(s is obj.coring for s in inst.structures.values()):
            add_structure(inst, f"{name}_coring", obj.coring, counital=obj.counital)
        names.bimodule(obj.carrier)
    else:
        raise TypeError(f"cannot store {type(obj).__name__}")
    key = _fresh(name, inst.structures)
    inst.structures[key] = obj
    if isinstance(obj, PreCoring):
        inst.counital[key] = counital
    if served is not None:
        inst.served[key] = np.asarray(served, dtype=DTYPE).reshape(-1, _served_dim(obj))
    return key


def to_dict(inst: Instance) -> dict:
    p = inst.p
    names = _Names(inst)
    out = {"format": FORMAT, "p": p, "algebras": {}, "bimodules": {}, "maps": {}, "structures": {}}
    for n, a in inst.algebras.items():
        if n == "k" and a.dim == 1:
            continue
        out["algebras"][n] = {"dim": a.dim, "structure": _lst(a.structure, p),
                              "unit": None if a.unit is None else _lst(a.unit, p)}
    for n, m in list(inst.bimodules.items()):
        out["bimodules"][n] = {"dim": m.dim, "left": names.algebra(m.left), "right": names.algebra(m.right),
                               "left_actions": _lst(np.array(m.left_actions).reshape(m.left.dim, m.dim, m.dim), p),
                               "right_actions": _lst(np.array(m.right_actions).reshape(m.right.dim, m.dim, m.dim),
                                                     p)}
    for n, f in inst.maps.items():
        out["maps"][n] = {"source": names.bimodule(f.source), "target": names.bimodule(f.target),
                          "matrix": _lst(f.matrix, p)}
    coring_names = {id(s): n for n, s in inst.structures.items() if isinstance(s, PreCoring)}
    for n, s in inst.structures.items():
        if isinstance(s, RingOver):
            d = {"kind": "ring", "base": names.algebra(s.base), "carrier": names.bimodule(s.carrier),
                 "structure": _lst(s.structure, p)}
        elif isinstance(s, DualPair):
            d = {"kind": "dual_pair", "M": names.bimodule(s.M), "Mp": names.bimodule(s.Mp),
                 "pairing": _lst(s.G, p)}
        elif isinstance(s, PreCoring):
            d = {"kind": "coring", "carrier": names.bimodule(s.carrier), "delta": _lst(s.delta, p),
                 "epsilon": None if s.epsilon is None else _lst(s.epsilon, p),
                 "counital": bool(inst.counital.get(n, False))}
        else:
            d = {"kind": "comodule", "coring": coring_names[id(s.coring)], "carrier": names.bimodule(s.carrier),
                 "coaction": _lst(s.coaction, p), "side": s.side, "counital": s.counital}
        if n in inst.served:
            d["served"] = _lst(inst.served[n], p)
        out["structures"][n] = d
    # names may have been added while writing the structures
    for n, m in inst.bimodules.items():
        if n not in out["bimodules"]:
            return to_dict(inst)
    for n, a in inst.algebras.items():
        if n not in out["algebras"] and n != "k":
            return to_dict(inst)
    return out


_ROW = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


def canonical_json(data) -> str:
    """Sorted keys, two-space indent, one matrix row per line."""
    text = json.dumps(data, sort_keys=True, indent=2)
    return _ROW.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text) + "\n"


def dump_instance(inst: Instance) -> str:
    return canonical_json(to_dict(inst))


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(dump_instance(inst), encoding="utf-8")
