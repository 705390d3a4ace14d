"""
Criterion reports - margins and verdicts shared by every detection test.

Margins are always reported raw; the verdict applies the reporting
tolerance on the detecting side only.
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict


class Verdict(Enum):
    """Outcome of a detection test."""
    DETECTED = "detected"
    NOT_DETECTED = "not-detected"
    BOUNDARY = "boundary"


class Side(Enum):
    """Which sign of the margin signals entanglement."""
    BELOW = "below"     # PPT eigenvalue, witness expectation
    ABOVE = "above"     # realignment excess


def verdict_for(margin: float, tol: float, side: Side) -> Verdict:
    if side is Side.BELOW:
        return Verdict.DETECTED if margin < -tol else Verdict.NOT_DETECTED
    return Verdict.DETECTED if margin > tol else Verdict.NOT_DETECTED


@dataclass(frozen=True)
class CriterionReport:
    """
    Result of one criterion on one state.

    Attributes:
        criterion: "ppt", "realignment", "witness", ...
        verdict: detected / not-detected (boundary only for closed-form predicates)
        margin: min PT eigenvalue, trace norm minus one, or Tr(W rho)
        tolerance: reporting tolerance that produced the verdict
        config: dims and any settings that influenced the margin
    """
    criterion: str
    verdict: Verdict
    margin: float
    tolerance: float
    config: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_margin(cls, criterion: str, margin: float, tolerance: float, side: Side,
                    **config) -> "CriterionReport":
        return cls(criterion, verdict_for(margin, tolerance, side), float(margin),
                   tolerance, dict(config))

    @property
    def detected(self) -> bool:
        return self.verdict is Verdict.DETECTED

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["verdict"] = self.verdict.value
        return data
