"""Verification reports shared by every checker in the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of an exhaustive or sampled verification sweep.

    ``violations`` are genuine failures.  ``undetermined`` collects cases that
    fell outside a decidable fragment; they never count as a pass or a fail.
    """

    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    undetermined: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def fail(self, message: str) -> None:
        self.violations.append(message)

    def merge(self, other: "CheckReport") -> None:
        self.checked += other.checked
        self.violations.extend(f"{other.name}: {v}" for v in other.violations)
        self.undetermined.extend(f"{other.name}: {u}" for u in other.undetermined)
        self.notes.extend(other.notes)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "violations": list(self.violations),
            "undetermined": list(self.undetermined),
            "notes": list(self.notes),
            "data": self.data,
        }

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"[{status}] {self.name}: {self.checked} checked"
        if self.violations:
            line += f", {len(self.violations)} violation(s); first: {self.violations[0]}"
        if self.undetermined:
            line += f", {len(self.undetermined)} undetermined"
        return line
