"""Structured pass/fail verdicts shared by every checker and the CLI."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class Clause:
    name: str
    ok: bool
    witness: Any = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "ok": bool(self.ok)}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    """Verdict of one check.

    ``status`` is derived: ``pass`` iff every clause is ok, ``error`` iff
    ``error`` is set (a precondition or parse failure, no verdict).
    """

    command: str
    clauses: list[Clause] = field(default_factory=list)
    inputs_echo: Any = None
    details: dict = field(default_factory=dict)
    error: str | None = None
    timing_ms: int = 0

    def add(self, name: str, ok: bool, witness=None) -> Clause:
        c = Clause(name, bool(ok), witness)
        self.clauses.append(c)
        return c

    def clause(self, name: str) -> Clause:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.clauses:
            self.clauses.append(Clause(prefix + c.name, c.ok, c.witness))

    @property
    def status(self) -> str:
        if self.error is not None:
            return ERROR
        return PASS if all(c.ok for c in self.clauses) else FAIL

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if not c.ok]

    def to_dict(self) -> dict:
        d = {
            "command": self.command,
            "status": self.status,
            "clauses": [c.to_dict() for c in sorted(self.clauses, key=lambda c: c.name)],
            "timing_ms": int(self.timing_ms),
            "inputs_echo": self.inputs_echo,
        }
        if self.error is not None:
            d["error"] = self.error
        d.update(self.details)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)
