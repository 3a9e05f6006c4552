"""Check reports: a verdict plus the defects that justify it."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    # (location, value) pairs; both already rendered to JSON-friendly data
    defects: list[tuple[Any, Any]] = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "defects": [{"at": loc, "value": val} for loc, val in self.defects],
        }
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    timing_ms: float | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def add(self, name: str, passed: bool, defects=None, note: str = "") -> Check:
        c = Check(name, bool(passed), list(defects or []), note)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.defects, c.note))

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self, timing: bool = False) -> dict:
        d: dict = {
            "title": self.title,
            "verdict": "pass" if self.passed else "fail",
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.data:
            d["data"] = self.data
        if timing and self.timing_ms is not None:
            d["timing_ms"] = round(self.timing_ms, 3)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False)

    def render(self, timing: bool = False) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.name}" + (f" ({c.note})" if c.note else ""))
            for d in c.defects:
                lines.append(f"      at {d[0]}: {d[1]}")
        for k, v in self.data.items():
            lines.append(f"  {k}: {v}")
        if timing and self.timing_ms is not None:
            lines.append(f"  time: {self.timing_ms:.1f} ms")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.render()
