"""Machine-readable run reports for the command line."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from . import __version__

TOOL = "bhsym"


@dataclass
class Check:
    name: str
    expected: str          # "zero", "nonzero" or "info"
    verdict: str
    passed: bool
    certificate: dict | None = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "verdict": self.verdict,
                "passed": self.passed, "certificate": self.certificate, "detail": self.detail}


@dataclass
class RunReport:
    command: str
    inputs: dict
    checks: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    version: str = __version__

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "tool": TOOL,
            "version": self.version,
            "command": self.command,
            "inputs": self.inputs,
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
            "timings": self.timings,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)


def certificate_check(name: str, cert, expected: str = "zero", detail: dict | None = None) -> Check:
    ok = cert.verdict == expected
    return Check(name, expected, cert.verdict, ok, cert.to_dict(), detail or {})


def schema() -> dict:
    """The JSON schema every run report validates against."""
    text = resources.files(__package__).joinpath("schemas/run_report.schema.json").read_text()
    return json.loads(text)
