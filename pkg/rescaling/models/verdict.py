"""
Verdict Models - test outcomes and rank tables shared by every report
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from rescaling.models.power_series import PowerSeries, lcs_product


class VerdictStatus(str, Enum):
    """Outcome of a Koszulness (or formula) test"""
    PASS = "PASS"                  # theorem-backed, no truncation caveat
    PASS_UP_TO_N = "PASS_UP_TO_N"  # necessary conditions hold through the checked degree
    FAIL = "FAIL"                  # conclusive
    UNSUPPORTED = "UNSUPPORTED"


@dataclass
class Verdict:
    """
    Result of a truncated test

    FAIL is conclusive; PASS_UP_TO_N only says nothing went wrong through
    `checked_degree`.
    """
    test: str
    status: VerdictStatus
    checked_degree: Optional[int] = None
    failing_degree: Optional[int] = None
    note: str = ""
    details: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def consistent(cls, test: str, degree: int, note: str = "", **details) -> "Verdict":
        return cls(test, VerdictStatus.PASS_UP_TO_N, checked_degree=degree, note=note, details=details)

    @classmethod
    def failed(cls, test: str, degree: Optional[int], note: str = "", checked_degree: int = None, **details) -> "Verdict":
        return cls(test, VerdictStatus.FAIL, checked_degree=checked_degree, failing_degree=degree,
                   note=note, details=details)

    @classmethod
    def theorem(cls, test: str, note: str, **details) -> "Verdict":
        return cls(test, VerdictStatus.PASS, note=note, details=details)

    @property
    def passed(self) -> bool:
        return self.status in (VerdictStatus.PASS, VerdictStatus.PASS_UP_TO_N)

    @property
    def message(self) -> str:
        if self.status == VerdictStatus.PASS_UP_TO_N:
            text = f"consistent with Koszul up to degree {self.checked_degree}"
        elif self.status == VerdictStatus.PASS:
            text = "Koszul"
        elif self.status == VerdictStatus.FAIL:
            text = "not Koszul" if self.failing_degree is None else f"not Koszul: fails at degree {self.failing_degree}"
        else:
            text = "unsupported"
        return f"{text} ({self.note})" if self.note else text

    def to_dict(self) -> Dict[str, Any]:
        return {
            "test": self.test,
            "status": self.status.value,
            "checked_degree": self.checked_degree,
            "failing_degree": self.failing_degree,
            "message": self.message,
            "details": self.details,
        }


@dataclass
class RankTable:
    """LCS ranks phi_n or homotopy ranks Phi_n, indexed by degree"""
    ranks: Dict[int, int]
    truncation: int
    kind: str = "lcs"
    source: Optional[PowerSeries] = None

    def __post_init__(self):
        self.ranks = {n: r for n, r in self.ranks.items() if r and n <= self.truncation}

    def get(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def as_list(self) -> List[int]:
        return [self.get(n) for n in range(1, self.truncation + 1)]

    def support(self) -> List[int]:
        return sorted(self.ranks)

    def product(self, order: Optional[int] = None, degree_scale: int = 1) -> PowerSeries:
        """prod (1 - t^(n * degree_scale))^rank_n"""
        top = self.truncation * degree_scale if order is None else order
        return lcs_product(((n * degree_scale, r) for n, r in self.ranks.items()), top)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "truncation": self.truncation,
            "ranks": {str(n): r for n, r in sorted(self.ranks.items())},
        }
