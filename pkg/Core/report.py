'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.

report.py
Verification report written by `main.py verify`.

The JSON form is the CI artifact: fixed key order, floats written with
repr() (shortest round-trip), no timestamps. Same flags -> same bytes.
'''

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from Core.errors import EXIT_CHECK_FAILED, EXIT_OK

SCHEMA_VERSION = 1

METRIC_RELATIVE = "relative"
METRIC_ABSOLUTE = "absolute"


def _finite_or_none(value):
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


@dataclass
class CheckRecord:
    suite: str
    name: str
    inputs: dict[str, Any]
    production: float | None
    oracle: float | None
    abs_error: float | None
    rel_error: float | None
    metric: str
    tolerance: float
    passed: bool
    failure: str | None = None

    # ------------------------------------------------------------------
    # FACTORIES
    # ------------------------------------------------------------------
    @classmethod
    def compare(cls, suite: str, name: str, inputs: dict, production: float, oracle: float,
                tolerance: float, metric: str = METRIC_RELATIVE) -> "CheckRecord":
        abs_error = abs(production - oracle)
        rel_error = abs_error / max(abs(oracle), 1e-300)
        error = rel_error if metric == METRIC_RELATIVE else abs_error
        return cls(suite, name, dict(inputs), _finite_or_none(production), _finite_or_none(oracle),
                   _finite_or_none(abs_error), _finite_or_none(rel_error), metric, tolerance,
                   bool(error <= tolerance))

    @classmethod
    def failed(cls, suite: str, name: str, inputs: dict, tolerance: float, exc: BaseException,
               metric: str = METRIC_RELATIVE) -> "CheckRecord":
        return cls(suite, name, dict(inputs), None, None, None, None, metric, tolerance, False,
                   f"{type(exc).__name__}: {exc}")

    @property
    def error(self) -> float | None:
        return self.rel_error if self.metric == METRIC_RELATIVE else self.abs_error


@dataclass
class Report:
    suite: str
    config: dict[str, Any]
    checks: list[CheckRecord] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    @property
    def summary(self) -> dict[str, int]:
        passed = sum(1 for c in self.checks if c.passed)
        return {"total": len(self.checks), "passed": passed, "failed": len(self.checks) - passed}

    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if not c.passed]

    def exit_code(self) -> int:
        return EXIT_OK if self.summary["failed"] == 0 else EXIT_CHECK_FAILED

    # ------------------------------------------------------------------
    # SERIALIZATION
    # ------------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "suite": self.suite,
            "config": self.config,
            "checks": [asdict(c) for c in self.checks],
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(
            suite=data["suite"],
            config=data["config"],
            checks=[CheckRecord(**c) for c in data["checks"]],
            schema_version=data["schema_version"],
        )

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def save(self, out_path: str | Path) -> Path:
        out_path = Path(out_path)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        with open(out_path, "w", encoding="utf-8", newline="\n") as f:
            f.write(self.to_json())
        return out_path
