"""Structured pass/fail reports shared by verifiers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    """One named check: largest violation observed and an optional witness."""

    name: str
    passed: bool
    max_violation: float = 0.0
    witness: str | None = None

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "pass": bool(self.passed),
            "max_violation": float(self.max_violation),
        }
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    """An ordered list of checks; passes iff every check passes."""

    command: str
    checks: list[Check] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, max_violation=0.0, witness=None) -> None:
        self.checks.append(Check(name, bool(passed), float(max_violation), witness))

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed_names(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self, artifacts: dict | None = None) -> dict:
        d = {
            "command": self.command,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.warnings:
            d["warnings"] = list(self.warnings)
        if artifacts is not None:
            d["artifacts"] = artifacts
        return d
