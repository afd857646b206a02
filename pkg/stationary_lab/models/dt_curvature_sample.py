from dataclasses import dataclass
from typing import Optional

FLAT_BY_CLASSIFICATION = "flat-by-classification"


@dataclass(frozen=True)
class CurvatureSample:
    e2omega: float
    K: float
    Kperp: float
    flag: Optional[str] = None

    @property
    def density(self) -> float:
        """|K| e^(2 omega), the integrand of the total curvature in the parameter plane."""
        return abs(self.K) * self.e2omega

    def __repr__(self):
        return f"<CurvatureSample K={self.K:.6g} Kperp={self.Kperp:.6g} e2omega={self.e2omega:.6g}>"

    def to_dict(self):
        return {
            "e2omega": self.e2omega,
            "K": self.K,
            "Kperp": self.Kperp,
            "density": self.density,
            "flag": self.flag,
        }
