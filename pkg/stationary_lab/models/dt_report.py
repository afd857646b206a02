from dataclasses import dataclass, field
from typing import Any, List, Optional

PLUMBING = "plumbing"


@dataclass
class CheckRecord:
    """One measured check; `passed` is None for informational records.

    `anchor` names the mathematical result the check demonstrates, or
    PLUMBING for bookkeeping records.
    """

    check_id: str
    claim: str
    measured: Any
    threshold: Any = None
    passed: Optional[bool] = None
    anchor: str = PLUMBING

    def to_dict(self):
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "claim": self.claim,
            "measured": self.measured,
            "threshold": self.threshold,
            "passed": self.passed,
        }


@dataclass
class Report:
    scenario: str
    checks: List[CheckRecord] = field(default_factory=list)
    environment: dict = field(default_factory=dict)
    # default anchor for measured checks of this scenario
    anchor: str = PLUMBING

    def add(self, check_id, claim, measured, threshold=None, passed=None, anchor=None) -> CheckRecord:
        record = CheckRecord(check_id, claim, measured, threshold, passed, anchor or self.anchor)
        self.checks.append(record)
        return record

    def info(self, check_id, claim, measured, anchor=PLUMBING) -> CheckRecord:
        return self.add(check_id, claim, measured, anchor=anchor)

    @property
    def passed(self) -> bool:
        return all(check.passed is not False for check in self.checks)

    @property
    def failures(self) -> List[CheckRecord]:
        return [check for check in self.checks if check.passed is False]

    @property
    def anchors(self) -> List[str]:
        return sorted({check.anchor for check in self.checks if check.anchor != PLUMBING})

    def __repr__(self):
        return f"<Report {self.scenario} passed={self.passed} checks={len(self.checks)}>"

    def to_dict(self):
        return {
            "scenario": self.scenario,
            "passed": self.passed,
            "anchors": self.anchors,
            "checks": [check.to_dict() for check in self.checks],
            "environment": self.environment,
        }
