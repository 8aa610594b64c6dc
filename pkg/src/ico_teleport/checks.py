"""
Check results shared by the verification routines and the CLI reports.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    """
    Outcome of one numerical check.

    Attributes:
        name: Stable identifier of the check.
        max_deviation: Largest observed deviation.
        tolerance: Acceptance threshold for max_deviation.
        details: Extra JSON-serializable data (probability tables, counts).
    """

    name: str
    max_deviation: float
    tolerance: float
    details: Dict[str, Any] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance and not self.failures

    def to_dict(self) -> dict:
        data = {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
        }
        if self.details:
            data["details"] = self.details
        if self.failures:
            data["failures"] = self.failures
        return data


@dataclass
class VerificationReport:
    """A named group of checks."""

    name: str
    checks: List[CheckResult] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def max_deviation(self) -> float:
        return max((c.max_deviation for c in self.checks), default=0.0)

    def add(self, check: CheckResult) -> CheckResult:
        if not check.passed:
            logger.warning(
                "%s: check %s failed (deviation %.3e > %.1e)",
                self.name, check.name, check.max_deviation, check.tolerance,
            )
        self.checks.append(check)
        return check

    @classmethod
    def merge(cls, name: str, reports: List["VerificationReport"]) -> "VerificationReport":
        """
        Fold repeated runs of the same checks into one report: the worst
        deviation wins, failures are pooled and the first run's details kept.
        """
        merged = cls(name=name)
        by_name: Dict[str, CheckResult] = {}
        for report in reports:
            for check in report.checks:
                current = by_name.get(check.name)
                if current is None:
                    by_name[check.name] = CheckResult(
                        check.name,
                        check.max_deviation,
                        check.tolerance,
                        details=dict(check.details),
                        failures=list(check.failures),
                    )
                    continue
                current.max_deviation = max(current.max_deviation, check.max_deviation)
                current.failures.extend(check.failures)
        for check in by_name.values():
            check.failures = check.failures[:10]
            merged.add(check)
        merged.details["runs"] = len(reports)
        return merged

    def get(self, name: str) -> Optional[CheckResult]:
        for check in self.checks:
            if check.name == name:
                return check
        return None

    def to_dict(self) -> dict:
        data = {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.details:
            data["details"] = self.details
        return data
