from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class LewySample:
    """Lewy transformation eta = x + xi at one point, with its Jacobian J_L = I + g / W."""

    x: Tuple[float, float]
    xi: Tuple[float, float]
    eta: Tuple[float, float]
    JL: np.ndarray
    lambdas: Tuple[float, float]
    warning: Optional[str] = None

    @property
    def conf(self) -> float:
        """Conformal factor (1/lambda_1 + 1/lambda_2)^-2 of the metric in the eta chart."""
        l1, l2 = self.lambdas
        return (1.0 / l1 + 1.0 / l2) ** -2

    @property
    def min_eigenvalue(self) -> float:
        return float(np.min(np.linalg.eigvalsh(self.JL)))

    def __repr__(self):
        return f"<LewySample x={self.x} eta={self.eta}>"

    def to_dict(self):
        return {
            "x": list(self.x),
            "xi": list(self.xi),
            "eta": list(self.eta),
            "JL": np.asarray(self.JL).tolist(),
            "lambdas": list(self.lambdas),
            "conf": self.conf,
            "warning": self.warning,
        }
