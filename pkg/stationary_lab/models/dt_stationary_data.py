"""Holomorphic data of entire stationary graphs.

Two families share one type:
  canonical  alpha = (1/2, c/2, d_3/2, ..., mu cosh(beta), mu sinh(beta))
  lightlike  alpha = (1/2, -i/2, v_3 beta'/2, ..., beta'/2), |v| = 1, c = -i
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .dt_holo_expr import HoloExpr

CANONICAL = "canonical"
LIGHTLIKE = "lightlike"


@dataclass(frozen=True)
class StationaryData:
    a: float
    b: float
    consts: Tuple[float, ...]
    beta: HoloExpr
    m: int
    mu: complex
    family: str = CANONICAL
    v: Tuple[float, ...] = field(default=())

    @property
    def c(self) -> complex:
        return complex(self.a, -self.b)

    @property
    def n(self) -> int:
        """Dimension of the ambient space R_1^(2+m)."""
        return 2 + self.m

    @property
    def is_lightlike(self) -> bool:
        return self.family == LIGHTLIKE

    @property
    def sum_d2(self) -> float:
        return float(sum(d * d for d in self.consts))

    def __repr__(self):
        return (f"<StationaryData {self.family} a={self.a} b={self.b} "
                f"consts={list(self.consts)} beta={self.beta.source!r} m={self.m}>")

    def to_dict(self):
        out = {
            "a": self.a,
            "b": self.b,
            "consts": list(self.consts),
            "beta": self.beta.source,
            "m": self.m,
        }
        if self.is_lightlike:
            out["family"] = LIGHTLIKE
            out["v"] = list(self.v)
        return out


@dataclass(frozen=True)
class GaussData:
    """Gauss maps phi, psi and height differential dh = hprime dz of a surface in R_1^4.

    `r` and `theta` are set when phi and psi come from canonical data:
    phi = r e^(i theta) e^(-beta), psi = -r^-1 e^(-i theta) e^(-beta).
    """

    phi: HoloExpr
    psi: HoloExpr
    hprime: HoloExpr
    r: Optional[float] = None
    theta: Optional[float] = None
    phi_coef: Optional[complex] = None
    psi_coef: Optional[complex] = None

    def __repr__(self):
        return f"<GaussData phi={self.phi.source!r} psi={self.psi.source!r} r={self.r}>"

    def to_dict(self):
        return {
            "phi": self.phi.source,
            "psi": self.psi.source,
            "hprime": self.hprime.source,
            "r": self.r,
            "theta": self.theta,
        }
