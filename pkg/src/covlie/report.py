"""Check records and suite reports with a fixed JSON layout."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .core import Element, label_str
from .fields import serialize_scalar

PASS = "pass"
FAIL = "fail"

REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "checks"],
    "additionalProperties": False,
    "properties": {
        "suite": {"type": "string"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "params", "status", "witness"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "params": {"type": "object"},
                    "status": {"enum": [PASS, FAIL]},
                    "witness": {"type": ["object", "null"]},
                },
            },
        },
    },
}


def to_jsonable(x):
    """Serialise elements, labels and scalars appearing in witnesses/params."""
    if isinstance(x, Element) or hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, tuple) and x and isinstance(x[0], str):
        return label_str(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    return serialize_scalar(x)


@dataclass
class CheckRecord:
    name: str
    params: dict = field(default_factory=dict)
    status: str = PASS
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": to_jsonable(self.params),
            "status": self.status,
            "witness": None if self.witness is None else to_jsonable(self.witness),
        }


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, rec: CheckRecord) -> CheckRecord:
        self.checks.append(rec)
        return rec

    def extend(self, recs) -> None:
        self.checks.extend(recs)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> CheckRecord:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "checks": [c.to_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def merge_reports(reports, suite: str | None = None) -> Report:
    """Combine suite reports into one, prefixing check names with their suite."""
    reports = list(reports)
    out = Report(suite or ",".join(r.suite for r in reports))
    for r in reports:
        for c in r.checks:
            out.add(CheckRecord(f"{r.suite}/{c.name}", c.params, c.status, c.witness))
    return out
