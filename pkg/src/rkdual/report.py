"""Deterministic reports: per-check verdicts, rank and homology tables.

The machine-readable rendering is byte-for-byte reproducible for identical
inputs and versions: fixed key order, no timing or environment data.  The
human-readable rendering may carry timing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

NOTICES = (
    "convention: a zero-length flag carries sign +1, so 0-cells map onto "
    "their barycenter vertex with coefficient (-1)^dim; a zero sign there "
    "would kill 0-cells and break the chain-map property.",
    "convention: a label subset is full when the between-condition holds "
    "for pairs drawn from the subset itself; quantifying over the whole "
    "complex would make the whole complex the only full subset.",
)


@dataclass
class CheckResult:
    name: str
    target: str
    passed: bool
    details: dict = field(default_factory=dict)


@dataclass
class Report:
    command: str
    ring: str
    document: str | None = None
    checks: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    errors: list = field(default_factory=list)

    def add(self, name, target, passed, **details):
        self.checks.append(CheckResult(name, target, bool(passed), details))
        return self.checks[-1]

    @property
    def passed(self) -> bool:
        return not self.errors and all(c.passed for c in self.checks)

    def to_payload(self) -> dict:
        return {
            "tool": "rkdual",
            "command": self.command,
            "ring": self.ring,
            "document": self.document,
            "passed": self.passed,
            "notices": list(NOTICES),
            "errors": list(self.errors),
            "tables": self.tables,
            "checks": [
                {"name": c.name, "target": c.target, "passed": c.passed,
                 "details": c.details}
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), sort_keys=True, indent=2,
                          ensure_ascii=False) + "\n"

    def to_text(self, elapsed=None) -> str:
        lines = [f"rkdual {self.command} (ring {self.ring}"
                 + (f", document {self.document}" if self.document else "") + ")"]
        for err in self.errors:
            lines.append(f"  ERROR  {err}")
        for key in sorted(self.tables):
            lines.append(f"  {key}:")
            table = self.tables[key]
            if isinstance(table, dict):
                for k in sorted(table, key=str):
                    lines.append(f"    {k}: {table[k]}")
            else:
                lines.append(f"    {table}")
        for c in self.checks:
            mark = "pass" if c.passed else "FAIL"
            extra = ""
            if not c.passed and c.details:
                extra = "  " + json.dumps(c.details, sort_keys=True,
                                          ensure_ascii=False)
            lines.append(f"  [{mark}] {c.name} ({c.target}){extra}")
        lines.append(f"result: {'ok' if self.passed else 'FAILED'}")
        if elapsed is not None:
            lines.append(f"elapsed: {elapsed:.3f}s")
        for note in NOTICES:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def homology_table(groups, ring) -> dict:
    """Render a homology dict degree -> group as degree -> string."""
    out = {}
    for q in sorted(groups):
        h = groups[q]
        if not h.is_trivial():
            out[str(q)] = h.describe(ring)
    return out or {"": "0"}
