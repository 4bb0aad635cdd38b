"""
report.py

Machine-readable pass/fail records shared by every check in the toolkit.

A Report is a named list of CheckEntry items. Each entry carries a pass/fail flag and a
free-form detail mapping (witness triples, residual vectors, signatures, counts).
Informational entries record values that are part of the result but are not themselves
a test, such as the hypotheses of the two-step criterion; they never change the verdict.

JSON encoding is deterministic: rationals become "p/q" strings, numpy arrays become
lists, keys are sorted, and nothing time- or host-dependent is recorded.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional
import json

import numpy as np

from exact import format_fraction

VERDICT_PASS = "pass"
VERDICT_FAIL = "fail"
VERDICT_ERROR = "error"


def to_jsonable(value: Any) -> Any:
    """Recursively convert report payloads into plain JSON types."""
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()] if value.dtype != object else \
            [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    return str(value)


@dataclass
class CheckEntry:
    """One named check inside a Report."""
    name: str
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)
    informational: bool = False

    def to_dict(self) -> Dict[str, Any]:
        payload = {"name": self.name, "passed": bool(self.passed)}
        if self.informational:
            payload["informational"] = True
        payload.update(self.detail)
        return to_jsonable(payload)


@dataclass
class Report:
    """
    Pass/fail record for one check, with per-entry witnesses.

    Attributes:
        check: Name of the check ("validate", "go-survey", ...).
        subject: What was checked (space id, parameters, dimensions).
        entries: Individual checks; the verdict fails if any non-informational entry fails.
        seed: Sampling seed, recorded verbatim when sampling was used.
        samples: Requested sample count, recorded verbatim when sampling was used.
        message: Human-readable one-liner.
        error: Set when the check could not run (input error); forces verdict "error".
    """
    check: str
    subject: Dict[str, Any] = field(default_factory=dict)
    entries: List[CheckEntry] = field(default_factory=list)
    seed: Optional[int] = None
    samples: Optional[int] = None
    message: str = ""
    error: Optional[str] = None

    def add(self, name: str, passed: bool, informational: bool = False,
            **detail: Any) -> CheckEntry:
        entry = CheckEntry(name=name, passed=bool(passed), detail=dict(detail),
                           informational=informational)
        self.entries.append(entry)
        return entry

    def entry(self, name: str) -> CheckEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(f"No entry named {name!r} in report {self.check!r}")

    def has_entry(self, name: str) -> bool:
        return any(entry.name == name for entry in self.entries)

    @property
    def verdict(self) -> str:
        if self.error is not None:
            return VERDICT_ERROR
        if any(not e.passed for e in self.entries if not e.informational):
            return VERDICT_FAIL
        return VERDICT_PASS

    @property
    def passed(self) -> bool:
        return self.verdict == VERDICT_PASS

    @property
    def witness(self) -> Optional[Dict[str, Any]]:
        """Detail of the first failing entry, or None when everything passed."""
        for entry in self.entries:
            if not entry.informational and not entry.passed:
                return entry.to_dict()
        return None

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "check": self.check,
            "verdict": self.verdict,
            "subject": to_jsonable(self.subject),
            "checks": [entry.to_dict() for entry in self.entries],
            "witness": self.witness,
            "seed": self.seed,
            "samples": self.samples,
        }
        if self.message:
            payload["message"] = self.message
        if self.error is not None:
            payload["error"] = self.error
        return payload

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


def exit_code_for(verdict: str) -> int:
    """CLI exit code contract: 0 pass, 1 fail, 2 input error."""
    return {VERDICT_PASS: 0, VERDICT_FAIL: 1, VERDICT_ERROR: 2}[verdict]
