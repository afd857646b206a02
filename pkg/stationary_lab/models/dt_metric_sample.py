from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class MetricSample:
    """Induced metric of a graph at one point of the base plane."""

    g11: float
    g12: float
    g22: float
    spacelike: bool
    W: Optional[float] = None
    ginv: Optional[Tuple[Tuple[float, float], Tuple[float, float]]] = None

    @property
    def det(self) -> float:
        return self.g11 * self.g22 - self.g12 * self.g12

    @property
    def area_ratio(self) -> Optional[float]:
        # Jacobian determinant of the projection onto the base plane
        return None if self.W is None else 1.0 / self.W

    def matrix(self) -> np.ndarray:
        return np.array([[self.g11, self.g12], [self.g12, self.g22]])

    def __repr__(self):
        return f"<MetricSample g=({self.g11:.6g}, {self.g12:.6g}, {self.g22:.6g}) W={self.W}>"

    def to_dict(self):
        return {
            "g11": self.g11,
            "g12": self.g12,
            "g22": self.g22,
            "W": self.W,
            "ginv": [list(row) for row in self.ginv] if self.ginv is not None else None,
            "spacelike": self.spacelike,
        }


@dataclass(frozen=True)
class CurveLength:
    """Length of a curve on a graph; improper ranges carry a tail bound per infinite end."""

    value: float
    t_range: Tuple[float, float]
    tail_lower: float = 0.0
    tail_upper: float = 0.0
    error: float = 0.0

    @property
    def tail_bound(self) -> float:
        return self.tail_lower + self.tail_upper

    @property
    def finite(self) -> bool:
        return bool(np.isfinite(self.tail_bound))

    def to_dict(self):
        return {
            "value": self.value,
            "t_range": list(self.t_range),
            "tail_lower": self.tail_lower,
            "tail_upper": self.tail_upper,
            "tail_bound": self.tail_bound,
            "finite": self.finite,
            "error": self.error,
        }
