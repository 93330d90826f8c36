"""Check reports and deterministic JSON output."""

from __future__ import annotations

from dataclasses import dataclass, field
import json

SCHEMA_VERSION = "sturmlab-report/1"


@dataclass
class CheckReport:
    check: str
    spec: str
    bound: int
    violations: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "fail" if self.violations else "pass"

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        out = {"check": self.check, "spec": self.spec, "bound": self.bound,
               "status": self.status, "violations": self.violations,
               "witnesses": self.witnesses}
        if self.details:
            out["details"] = self.details
        return out


def dumps(document) -> str:
    """Byte-stable JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
