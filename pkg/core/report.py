"""
core/report.py
Verdicts and reports. A check never raises for a failed property; it returns a Verdict.
"""

from dataclasses import dataclass, field
from typing import Any, Iterable, Optional


@dataclass
class Verdict:
    check: str
    ok: bool
    failure_reason: str = ""
    witness: Optional[Any] = None
    skipped: bool = False

    @property
    def status(self) -> str:
        if self.skipped:
            return "skipped"
        return "pass" if self.ok else "fail"

    def to_json(self) -> dict:
        out = {"check": self.check, "status": self.status}
        if self.failure_reason:
            out["failure_reason"] = self.failure_reason
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def passed(check: str) -> Verdict:
    return Verdict(check, True)


def failed(check: str, reason: str, witness: Any = None) -> Verdict:
    return Verdict(check, False, failure_reason=reason, witness=witness)


def skipped(check: str, reason: str) -> Verdict:
    return Verdict(check, True, failure_reason=reason, skipped=True)


@dataclass
class Report:
    name: str
    verdicts: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, verdict: Verdict) -> Verdict:
        self.verdicts.append(verdict)
        return verdict

    def extend(self, verdicts: Iterable[Verdict]):
        self.verdicts.extend(verdicts)

    @property
    def passed(self) -> bool:
        return all(v.ok for v in self.verdicts)

    @property
    def first_failure(self) -> Optional[Verdict]:
        return next((v for v in self.verdicts if not v.ok), None)

    def __getitem__(self, check: str) -> Verdict:
        for v in self.verdicts:
            if v.check == check:
                return v
        raise KeyError(check)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "passed": self.passed,
            "checks": [v.to_json() for v in self.verdicts],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


@dataclass
class SuiteReport(Report):
    params: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for v in self.verdicts:
            out[v.status] += 1
        return out

    def to_json(self, timing: bool = False) -> dict:
        out = super().to_json()
        out["suite"] = out.pop("name")
        out["params"] = dict(self.params)
        out["counts"] = self.counts
        # wall time varies between runs, keep it out unless asked
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out
