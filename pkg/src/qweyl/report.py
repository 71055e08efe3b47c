"""Deterministic pass/fail reports shared by all verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List

ENGINE_VERSION = "0.1.0"

__all__ = ["Report", "ReportItem", "ENGINE_VERSION"]


@dataclass
class ReportItem:
    name: str
    passed: bool
    residual: str = ""
    note: str = ""

    def to_dict(self):
        d = {"name": self.name, "pass": self.passed, "residual": self.residual}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    suite: str
    inputs: dict = field(default_factory=dict)
    items: List[ReportItem] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for it in self.items if it.passed)

    @property
    def failed(self) -> int:
        return sum(1 for it in self.items if not it.passed)

    @property
    def all_passed(self) -> bool:
        return self.failed == 0

    def add(self, name, passed, residual="", note=""):
        self.items.append(ReportItem(name=name, passed=passed,
                                     residual=str(residual), note=note))

    def extend(self, other: "Report", prefix: str = ""):
        for it in other.items:
            self.items.append(ReportItem(name=prefix + it.name, passed=it.passed,
                                         residual=it.residual, note=it.note))

    def to_dict(self):
        return {
            "suite": self.suite,
            "inputs": {k: _plain(v) for k, v in sorted(self.inputs.items())},
            "items": [it.to_dict() for it in self.items],
            "summary": {"passed": self.passed, "failed": self.failed},
            "engine_version": ENGINE_VERSION,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def text_table(self) -> str:
        lines = [f"suite: {self.suite}"]
        for k, v in sorted(self.inputs.items()):
            lines.append(f"  {k} = {_plain(v)}")
        width = max((len(it.name) for it in self.items), default=4)
        for it in self.items:
            status = "PASS" if it.passed else "FAIL"
            extra = ""
            if it.residual and not it.passed:
                extra = f"  residual: {it.residual}"
            elif it.note:
                extra = f"  ({it.note})"
            lines.append(f"  [{status}] {it.name.ljust(width)}{extra}")
        lines.append(f"  {self.passed} passed, {self.failed} failed")
        return "\n".join(lines)


def _plain(v):
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    return str(v)
