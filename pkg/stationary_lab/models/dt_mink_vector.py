from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import DimensionError


@dataclass(frozen=True)
class MinkVector:
    """Point or vector of R_1^n; the last coordinate is the timelike one."""

    coords: tuple

    def __init__(self, coords: Sequence[float]):
        values = tuple(float(c) for c in coords)
        if len(values) < 2:
            raise DimensionError(f"dimension: Minkowski vectors need n >= 2, got {len(values)}")
        object.__setattr__(self, "coords", values)

    @property
    def n(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)

    def __add__(self, other):
        if not isinstance(other, MinkVector):
            return NotImplemented
        if other.n != self.n:
            raise DimensionError(f"dimension mismatch: {self.n} vs {other.n}")
        return MinkVector(self.as_array() + other.as_array())

    def __mul__(self, scalar):
        return MinkVector(self.as_array() * float(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        return f"<MinkVector {self.coords}>"

    def to_dict(self):
        return {"coords": list(self.coords), "n": self.n}
