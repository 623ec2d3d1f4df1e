"""Check results and reports shared by the library and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

from .monoidal import GradedObject, Morphism, factor_names


@dataclass
class Check:
    law: str
    passed: bool
    witness: Optional[tuple] = None
    detail: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"law": self.law, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.detail is not None:
            out["detail"] = self.detail
        return out

    def __bool__(self):
        return self.passed


@dataclass
class Report:
    """Ordered list of law checks plus free-form data (dimensions, counts...)."""

    task: str
    checks: List[Check] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks: Iterable[Check]):
        self.checks.extend(checks)

    def extend_prefixed(self, prefix: str, other: "Report"):
        for c in other.checks:
            self.checks.append(Check(f"{prefix}{c.law}", c.passed, c.witness, c.detail))

    def get(self, law: str) -> Check:
        for c in self.checks:
            if c.law == law:
                return c
        raise KeyError(law)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {"task": self.task, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks], "data": self.data}

    def to_text(self) -> str:
        lines = [f"{self.task}: {'PASS' if self.passed else 'FAIL'}"]
        width = max([len(c.law) for c in self.checks] + [4])
        for c in self.checks:
            line = f"  {c.law.ljust(width)}  {'pass' if c.passed else 'FAIL'}"
            if c.witness is not None:
                line += f"  witness=({', '.join(map(str, c.witness))})"
            if c.detail:
                line += f"  {c.detail}"
            lines.append(line)
        for k in sorted(self.data):
            v = self.data[k]
            text = str(v)
            if isinstance(v, (list, dict)) and len(text) > 100:
                text = f"<{len(v)} entries; use --json>"
            lines.append(f"  {k}: {text}")
        return "\n".join(lines)


def compare(law: str, lhs: Morphism, rhs: Morphism, factors: Sequence[GradedObject],
            columns: Optional[Iterable[int]] = None) -> Check:
    """Equality of two parallel morphisms; witness = first failing source basis tuple."""
    j = lhs.matrix.first_mismatch(rhs.matrix, columns)
    if j is None:
        return Check(law, True)
    return Check(law, False, factor_names(factors, j))


def vanishes(law: str, f: Morphism, factors: Sequence[GradedObject],
             columns: Optional[Iterable[int]] = None) -> Check:
    j = f.matrix.first_nonzero_column(columns)
    if j is None:
        return Check(law, True)
    return Check(law, False, factor_names(factors, j))
