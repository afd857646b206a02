from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from ..errors import DimensionError, EvaluationError

FieldFn = Callable[[np.ndarray, np.ndarray], np.ndarray]
PartialsFn = Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class GraphSurface:
    """Entire graph f: R^2 -> R_1^m.

    `values(x1, x2)` returns an array of shape (m,) + broadcast(x1, x2).shape.
    `partials` returns (p, q) with the same shape; without it the derivatives
    are central differences of step `fd_step`.
    """

    m: int
    values: FieldFn
    partials: Optional[PartialsFn] = None
    fd_step: float = 1e-5
    name: str = "graph"
    source: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.m < 1:
            raise DimensionError(f"dimension: codimension m >= 1 required, got {self.m}")
        if self.fd_step <= 0:
            raise ValueError("fd_step must be > 0")

    @property
    def analytic(self) -> bool:
        return self.partials is not None

    def evaluate(self, x1, x2) -> np.ndarray:
        x1, x2 = np.broadcast_arrays(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float))
        out = np.asarray(self.values(x1, x2), dtype=float)
        out = np.broadcast_to(out, (self.m,) + x1.shape)
        if not np.all(np.isfinite(out)):
            raise EvaluationError(f"evaluation: non-finite value of {self.name}")
        return out

    def derivatives(self, x1, x2) -> Tuple[np.ndarray, np.ndarray]:
        x1, x2 = np.broadcast_arrays(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float))
        if self.partials is not None:
            p, q = self.partials(x1, x2)
            shape = (self.m,) + x1.shape
            p = np.broadcast_to(np.asarray(p, dtype=float), shape)
            q = np.broadcast_to(np.asarray(q, dtype=float), shape)
        else:
            h = self.fd_step
            p = (self.evaluate(x1 + h, x2) - self.evaluate(x1 - h, x2)) / (2 * h)
            q = (self.evaluate(x1, x2 + h) - self.evaluate(x1, x2 - h)) / (2 * h)
        if not (np.all(np.isfinite(p)) and np.all(np.isfinite(q))):
            raise EvaluationError(f"evaluation: non-finite derivative of {self.name}")
        return p, q

    def __repr__(self):
        kind = "analytic" if self.analytic else "numeric"
        return f"<GraphSurface {self.name} m={self.m} {kind}>"

    def to_dict(self):
        return {
            "name": self.name,
            "m": self.m,
            "analytic": self.analytic,
            "fd_step": self.fd_step,
            "source": self.source,
        }


@dataclass(frozen=True)
class CurvePath:
    """Parametrized curve t -> (x1(t), x2(t)) in the base plane with its velocity."""

    position: Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]
    velocity: Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]
    name: str = "path"

    def __repr__(self):
        return f"<CurvePath {self.name}>"
