"""Pass/fail reports shared by the verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name: str, ok, detail: str = "") -> bool:
        status = SKIP if ok is None else (PASS if ok else FAIL)
        self.checks.append(Check(name, status, str(detail)))
        return bool(ok) if ok is not None else True

    def skip(self, name: str, detail: str = ""):
        self.checks.append(Check(name, SKIP, detail))

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def passed(self, name: str) -> bool:
        return self[name].status == PASS

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.detail))

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [c.__dict__ for c in self.checks],
            "data": self.data,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str)

    def to_markdown(self) -> str:
        lines = [f"## {self.title}", "", "| check | status | detail |", "|---|---|---|"]
        for c in self.checks:
            lines.append(f"| {c.name} | {c.status} | {c.detail} |")
        return "\n".join(lines) + "\n"

    def __str__(self):
        return "\n".join(f"[{c.status}] {c.name} {c.detail}".rstrip() for c in self.checks)
