"""Structured pass/fail records shared by the limit harness and the CLI."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

__all__ = ["CheckRecord", "VerificationReport"]

STATUSES = ("pass", "fail", "na")


@dataclass
class CheckRecord:
    identity: str
    grid_size: int
    status: str
    max_deviation: Optional[float] = None
    note: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}")


@dataclass
class VerificationReport:
    suite: str
    params: dict = field(default_factory=dict)
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, identity: str, grid_size: int, ok: Optional[bool], deviation: Optional[float] = None, note: str = ""):
        status = "na" if ok is None else ("pass" if ok else "fail")
        self.records.append(CheckRecord(identity, grid_size, status, deviation, note))
        return ok

    def extend(self, other: "VerificationReport") -> None:
        for rec in other.records:
            self.records.append(CheckRecord(f"{other.suite}/{rec.identity}", **{k: v for k, v in asdict(rec).items() if k != "identity"}))

    @property
    def passed(self) -> bool:
        """Overall status: 'na' records (informational findings) do not fail the suite."""
        return all(r.status != "fail" for r in self.records)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "status": "pass" if self.passed else "fail",
            "records": [asdict(r) for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.records:
            dev = "" if r.max_deviation is None else f" maxdev={r.max_deviation:.3e}"
            note = f"  # {r.note}" if r.note else ""
            lines.append(f"  [{r.status:4}] {r.identity} (grid {r.grid_size}){dev}{note}")
        return "\n".join(lines)
