"""Check records and suite reports, with stable JSON / CSV serialization."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable

CSV_FIELDS = ("suite", "name", "anchor", "deviation", "tol", "pass")


@dataclass(frozen=True)
class CheckRecord:
    name: str
    anchor: str
    deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        # NaN deviations fail
        return bool(self.deviation <= self.tol)

    def as_dict(self) -> dict[str, Any]:
        dev = self.deviation
        return {
            "name": self.name,
            "anchor": self.anchor,
            "deviation": dev if math.isfinite(dev) else str(dev),
            "tol": self.tol,
            "pass": self.passed,
        }


@dataclass
class SuiteReport:
    suite: str
    config: dict[str, Any] = field(default_factory=dict)
    checks: list[CheckRecord] = field(default_factory=list)
    elapsed_ms: float | None = None
    # numeric side products (Gram matrices, ...); not serialized
    data: dict[str, Any] = field(default_factory=dict, repr=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, anchor: str, deviation: float, tol: float) -> CheckRecord:
        rec = CheckRecord(name, anchor, float(deviation), float(tol))
        self.checks.append(rec)
        return rec

    def extend(self, other: SuiteReport, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(CheckRecord(prefix + c.name, c.anchor, c.deviation, c.tol))

    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "config": self.config,
            "checks": [c.as_dict() for c in self.checks],
            "pass": self.passed,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False) + "\n"

    def csv_rows(self) -> Iterable[list]:
        for c in self.checks:
            yield [self.suite, c.name, c.anchor, repr(c.deviation), repr(c.tol), str(c.passed).lower()]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        w.writerows(self.csv_rows())
        return buf.getvalue()


def merge_reports(name: str, reports: list[SuiteReport], config: dict[str, Any] | None = None) -> SuiteReport:
    out = SuiteReport(name, dict(config or {}))
    for r in reports:
        out.extend(r, prefix=f"{r.suite}: ")
    return out
