"""Certificates: named lists of expected/actual checks with deterministic serialisation."""

from __future__ import annotations

import hashlib
import json
import platform
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from . import __version__

__all__ = ["Check", "Certificate", "CertificationFailure", "VerificationReport", "jsonable", "toolchain"]


class CertificationFailure(AssertionError):
    """A load-bearing exact identity or dimension count did not hold."""


def jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, str) or x is None:
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)


@dataclass
class Check:
    name: str
    status: str
    expected: Any = None
    actual: Any = None
    details: Any = None

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "expected": jsonable(self.expected),
                "actual": jsonable(self.actual), "details": jsonable(self.details)}


@dataclass
class Certificate:
    check: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def expect(self, name: str, expected, actual, details=None) -> bool:
        ok = jsonable(expected) == jsonable(actual)
        self.checks.append(Check(name, "pass" if ok else "fail", expected, actual, details))
        return ok

    def require(self, name: str, condition: bool, details=None) -> bool:
        return self.expect(name, True, bool(condition), details)

    def error(self, name: str, exc: BaseException) -> None:
        self.checks.append(Check(name, "error", None, None, f"{type(exc).__name__}: {exc}"))

    def extend(self, other: "Certificate", prefix: str | None = None) -> None:
        for c in other.checks:
            name = f"{prefix}: {c.name}" if prefix else c.name
            self.checks.append(Check(name, c.status, c.expected, c.actual, c.details))
        self.data.update(other.data)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.status == "pass" for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status != "pass"]

    def raise_if_failed(self) -> "Certificate":
        bad = self.failures()
        if bad:
            raise CertificationFailure(f"{self.check}: " + "; ".join(
                f"{c.name} (expected {c.expected!r}, got {c.actual!r})" for c in bad))
        return self

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.checks]


def toolchain() -> str:
    return f"exholo {__version__}; python {platform.python_version()}; numpy {np.__version__}"


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check]
    toolchain: str
    elapsed_ms: int = 0
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.status == "pass" for c in self.checks)

    def canonical(self) -> dict:
        return {"suite": self.suite, "toolchain": self.toolchain,
                "status": "pass" if self.passed else "fail",
                "checks": [c.to_json() for c in self.checks],
                "data": jsonable(self.data)}

    def dumps(self) -> str:
        """Canonical JSON (elapsed time excluded)."""
        return json.dumps(self.canonical(), indent=2, sort_keys=True) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()

    def markdown(self) -> str:
        lines = [f"# Verification report: {self.suite}", "",
                 f"toolchain: {self.toolchain}", "",
                 "| check | status | expected | actual |", "|---|---|---|---|"]
        for c in self.checks:
            exp = json.dumps(jsonable(c.expected))
            act = json.dumps(jsonable(c.actual))
            lines.append(f"| {c.name} | {c.status} | {exp} | {act} |")
        lines.append("")
        lines.append(f"sha256 of canonical JSON: `{self.digest()}`")
        return "\n".join(lines) + "\n"
