"""Exceptions and the diagnostic report type shared by every module."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class Infeasible(Exception):
    """A linear (or enumerated) search has no solution."""


class BudgetExceeded(Exception):
    """An exhaustive enumeration would visit more points than allowed."""

    def __init__(self, size, budget):
        super().__init__(f"search space of size {size} exceeds budget {budget}")
        self.size = size
        self.budget = budget


class AxiomError(ValueError):
    """A structure fails one of its defining laws.

    ``law`` names the law, ``where`` optionally locates the failure
    (a basis triple, a key path, ...).
    """

    def __init__(self, law, where=None, message=None):
        text = message or f"law violated: {law}"
        if where is not None:
            text += f" at {where}"
        super().__init__(text)
        self.law = law
        self.where = where


@dataclass
class Report:
    """Named boolean checks plus free-form details.

    ``ok`` is the conjunction of all checks.  Panels that compare
    equivalent conditions also fill ``conditions`` and report ``agreement``.
    """

    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)
    conditions: dict[str, bool] = field(default_factory=dict)

    def add(self, key, value, detail=None):
        self.checks[key] = bool(value)
        if detail is not None:
            self.details[key] = detail
        return bool(value)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    @property
    def agreement(self) -> bool:
        values = set(self.conditions.values())
        return len(values) <= 1

    def __bool__(self):
        return self.ok

    def to_dict(self):
        out = {"name": self.name, "ok": self.ok, "checks": dict(self.checks)}
        if self.conditions:
            out["conditions"] = dict(self.conditions)
            out["agreement"] = self.agreement
        if self.details:
            out["details"] = {k: _plain(v) for k, v in self.details.items()}
        return out

    def __str__(self):
        lines = [f"{self.name}: {'ok' if self.ok else 'FAILED'}"]
        for k, v in self.checks.items():
            lines.append(f"  {'pass' if v else 'FAIL'}  {k}")
        if self.conditions:
            for k, v in self.conditions.items():
                lines.append(f"  cond  {k} = {v}")
            lines.append(f"  agreement = {self.agreement}")
        return "\n".join(lines)


def _plain(value):
    import numpy as np

    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return repr(value)
