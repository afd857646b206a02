# stationary_lab/services/mink_service.py

import logging
from typing import Sequence, Union

import numpy as np

from ..config import Config
from ..errors import DimensionError, EvaluationError
from ..models.dt_mink_vector import MinkVector
from ..models.lt_causal_class import CausalClass

logger = logging.getLogger(__name__)

VectorLike = Union[MinkVector, Sequence[float], np.ndarray]


def _coords(u: VectorLike) -> np.ndarray:
    if isinstance(u, MinkVector):
        return u.as_array()
    return np.asarray(u)


def signature(n: int) -> np.ndarray:
    """diag(1, ..., 1, -1) as a vector of signs."""
    if n < 2:
        raise DimensionError(f"dimension: n >= 2 required, got {n}")
    eta = np.ones(n)
    eta[-1] = -1.0
    return eta


def mink_inner(u: VectorLike, v: VectorLike) -> float:
    """u1 v1 + ... + u_{n-1} v_{n-1} - u_n v_n."""
    a, b = _coords(u), _coords(v)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    n = a.shape[0]
    if n < 2:
        raise DimensionError(f"dimension: n >= 2 required, got {n}")
    value = float(np.dot(a[:-1], b[:-1]) - a[-1] * b[-1])
    if not np.isfinite(value):
        raise EvaluationError("evaluation: non-finite Minkowski inner product")
    return value


def mink_norm_sq(u: VectorLike) -> float:
    return mink_inner(u, u)


def complex_mink_inner(alpha, beta):
    """Bilinear extension of the inner product to C^n (no conjugation).

    Works on the leading axis, so stacked component arrays of shape (n, ...) are fine.
    """
    a, b = np.asarray(alpha), np.asarray(beta)
    if a.shape[0] != b.shape[0]:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return np.sum(a[:-1] * b[:-1], axis=0) - a[-1] * b[-1]


def inner_fields(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Vectorized <p, q> for component arrays of shape (m, ...); m == 1 is the pure timelike line."""
    p, q = np.asarray(p), np.asarray(q)
    if p.shape != q.shape:
        raise DimensionError(f"dimension mismatch: {p.shape} vs {q.shape}")
    if p.shape[0] == 1:
        return -p[0] * q[0]
    return np.sum(p[:-1] * q[:-1], axis=0) - p[-1] * q[-1]


def default_causal_tol(u: VectorLike) -> float:
    scale = abs(mink_norm_sq(u))
    return Config.CAUSAL_TOL * (1.0 + scale)


def causal_class(u: VectorLike, tau_causal: float = None) -> CausalClass:
    if tau_causal is None:
        tau_causal = default_causal_tol(u)
    if tau_causal < 0:
        raise ValueError("tau_causal must be >= 0")
    value = mink_norm_sq(u)
    if abs(value) <= tau_causal:
        return CausalClass.LIGHTLIKE
    return CausalClass.SPACELIKE if value > 0 else CausalClass.TIMELIKE


def is_spacelike_pair(p: VectorLike, q: VectorLike) -> bool:
    """Whether I2 + Gram(p, q) is positive definite; p and q may have a single (timelike) entry."""
    p, q = _coords(p).astype(float), _coords(q).astype(float)
    g11 = 1.0 + float(inner_fields(p, p))
    g22 = 1.0 + float(inner_fields(q, q))
    g12 = float(inner_fields(p, q))
    return g11 > 0 and g11 * g22 - g12 * g12 > 0
