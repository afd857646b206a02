from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple


class BernsteinCase(str, Enum):
    """Trichotomy of entire stationary graphs in R_1^4 by their W-function."""

    CASE_I = "CaseI"      # affine plane, W constant
    CASE_II = "CaseII"    # f = h y0 + y1 with y0 lightlike, W = 1
    CASE_III = "CaseIII"  # W oscillates between r1 < 1 < r2


class AreaIncreasingCase(str, Enum):
    """Case structure for data whose projection might be area-increasing (W <= 1)."""

    ALL_CONSTANT = "all-constant"
    LAST_CONSTANT = "last-constant"
    LAST_NONCONSTANT = "last-nonconstant"
    LIGHTLIKE = "last-nonconstant-lightlike"


@dataclass(frozen=True)
class Classification:
    case: BernsteinCase
    r1: float
    r2: float
    y0: Optional[Tuple[float, ...]] = None
    trichotomy: bool = True

    @property
    def product(self) -> float:
        return self.r1 * self.r2

    def to_dict(self):
        return {
            "case": self.case.value,
            "r1": self.r1,
            "r2": self.r2,
            "product": self.product,
            "y0": list(self.y0) if self.y0 is not None else None,
            "trichotomy": self.trichotomy,
        }


@dataclass(frozen=True)
class AreaIncreasingVerdict:
    case: AreaIncreasingCase
    w_le_one_possible: bool
    reason: str

    def to_dict(self):
        return {
            "case": self.case.value,
            "w_le_one_possible": self.w_le_one_possible,
            "reason": self.reason,
        }
