"""Structured check results with explicit witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .algebra import format_terms

PASS = "pass"
FAIL = "fail"
UNDETERMINED = "undetermined"


def vec_strings(v, base, rank: int) -> List[str]:
    """Components of a sparse vector as polynomial strings."""
    comps: List[dict] = [dict() for _ in range(rank)]
    for (q, m), c in v.items():
        comps[q][m] = c
    return [format_terms(d, base) if d else "0" for d in comps]


@dataclass
class Witness:
    """A concrete element certifying a claim (nonzero class, failing square, ...)."""

    kind: str
    description: str
    vector: Optional[dict] = None
    rank: int = 0
    base: Any = None
    level: Optional[int] = None
    degree: Optional[int] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out: Dict[str, Any] = {"kind": self.kind, "description": self.description}
        if self.vector is not None and self.base is not None:
            out["element"] = vec_strings(self.vector, self.base, self.rank)
        if self.level is not None:
            out["level"] = self.level
        if self.degree is not None:
            out["degree"] = self.degree
        if self.extra:
            out["data"] = self.extra
        return out


@dataclass
class Verdict:
    check: str
    status: str
    summary: str
    witnesses: List[Witness] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    bounds: Dict[str, int] = field(default_factory=dict)
    failing_level: Optional[int] = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL, UNDETERMINED):
            raise ValueError(f"bad verdict status {self.status!r}")
        if self.status == FAIL and not self.witnesses:
            raise ValueError("a failing verdict needs at least one witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        out = {
            "check": self.check,
            "verdict": self.status,
            "summary": self.summary,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "details": self.details,
            "bounds": self.bounds,
        }
        if self.failing_level is not None:
            out["failing_level"] = self.failing_level
        return out


def combine(check: str, parts: List[Verdict], summary_pass: str, bounds=None) -> Verdict:
    """Fail if any part fails, else undetermined if any part is, else pass."""
    wit = [w for p in parts for w in p.witnesses]
    details = {p.check: p.status for p in parts}
    failing = [p for p in parts if p.failed]
    if failing:
        lvl = next((p.failing_level for p in failing if p.failing_level is not None), None)
        return Verdict(check, FAIL, failing[0].summary, wit, details, bounds or {}, lvl)
    if any(p.status == UNDETERMINED for p in parts):
        und = next(p for p in parts if p.status == UNDETERMINED)
        return Verdict(check, UNDETERMINED, und.summary, wit, details, bounds or {})
    return Verdict(check, PASS, summary_pass, wit, details, bounds or {})
