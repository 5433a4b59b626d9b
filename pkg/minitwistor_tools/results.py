""" Check records shared by the verification suites """

from typing import Any, Dict, List, Optional

import attr


@attr.s(auto_attribs=True, frozen=True, slots=True)
class CheckResult:
    """ The result of one property check with optional diagnostics """

    name: str
    passed: bool
    worst: Optional[float] = None
    threshold: Optional[float] = None
    detail: Optional[str] = None

    def __bool__(self) -> bool:
        """ Transforms the value into a boolean """
        return self.passed

    def to_dict(self) -> Dict[str, Any]:
        """ Record for serialization """
        return {
            "name": self.name,
            "passed": self.passed,
            "worst": self.worst,
            "threshold": self.threshold,
            "detail": self.detail,
        }


def check_below(
    name: str, worst: float, threshold: float, detail: Optional[str] = None
) -> CheckResult:
    """ Passes when worst <= threshold """
    return CheckResult(name, bool(worst <= threshold), float(worst), threshold, detail)


@attr.s(auto_attribs=True, frozen=True, slots=True)
class Report:
    """ A named group of checks """

    name: str
    checks: List[CheckResult] = attr.Factory(list)

    def __bool__(self) -> bool:
        """ True when every check passed """
        return all(self.checks)

    def failures(self) -> List[CheckResult]:
        """ Checks that did not pass """
        return [check for check in self.checks if not check]

    def to_dict(self) -> Dict[str, Any]:
        """ Record for serialization """
        return {
            "name": self.name,
            "passed": bool(self),
            "checks": [check.to_dict() for check in self.checks],
        }
