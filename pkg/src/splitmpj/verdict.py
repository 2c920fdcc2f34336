from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of one mathematical check.

    A failed verdict always carries a witness; ``passed=None`` marks a check
    that was not applicable (its hypotheses were not met).
    """

    passed: bool | None
    witness: Any = None
    note: str = ""

    def __bool__(self):
        return bool(self.passed)

    @classmethod
    def ok(cls, note: str = "") -> "Verdict":
        return cls(True, None, note)

    @classmethod
    def fail(cls, witness, note: str = "") -> "Verdict":
        if witness is None:
            raise ValueError("a failed verdict needs a witness")
        return cls(False, witness, note)

    @classmethod
    def skipped(cls, note: str) -> "Verdict":
        return cls(None, None, note)
