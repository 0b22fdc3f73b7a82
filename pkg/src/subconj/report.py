from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Any, Iterator

PASS = "pass"
FAIL = "fail"
SKIP = "skip"


@dataclass
class Report:
    """Outcome of one verification check.

    A failing report always carries a ``counterexample`` string that is enough
    to reproduce the failure by hand.
    """

    name: str
    status: str = PASS
    checked: int = 0
    detail: str = ""
    counterexample: str | None = None
    skipped: int = 0
    duration_ms: float = 0.0
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self) -> bool:
        return self.passed

    def fail(self, counterexample: str) -> "Report":
        self.status = FAIL
        self.counterexample = counterexample
        return self

    def line(self, timings: bool = False) -> str:
        parts = [f"{self.status.upper():4}", self.name, f"checked={self.checked}"]
        if self.skipped:
            parts.append(f"skipped={self.skipped}")
        if self.detail:
            parts.append(self.detail)
        if self.counterexample is not None:
            parts.append(f"counterexample: {self.counterexample}")
        if timings:
            parts.append(f"({self.duration_ms:.0f} ms)")
        return "  ".join(parts)

    def as_dict(self, timings: bool = False) -> dict[str, Any]:
        out = asdict(self)
        if not timings:
            del out["duration_ms"]
        return out


@contextmanager
def timed(report: Report) -> Iterator[Report]:
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.duration_ms = (time.perf_counter() - start) * 1000.0
