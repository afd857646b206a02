# stationary_lab/services/quadrature_service.py

import logging
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np

from ..errors import QuadratureError

logger = logging.getLogger(__name__)

GL_ORDER = 16
MAX_INTERVALS = 4000
_EPS = np.finfo(float).eps


@lru_cache(maxsize=8)
def _leggauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def leggauss_ab(order: int, a: float, b: float):
    """Gauss-Legendre knots and weights mapped to [a, b]."""
    x, w = _leggauss(order)
    half = 0.5 * (b - a)
    return half * x + 0.5 * (b + a), half * w


def _gl(func, a, b, order):
    x, w = leggauss_ab(order, a, b)
    return np.sum(w * np.asarray(func(x)))


def adaptive_gauss_legendre(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-12,
    order: int = GL_ORDER,
    max_intervals: int = MAX_INTERVALS,
) -> Tuple[complex, float]:
    """Integrate a vectorized (real or complex valued) function over [a, b].

    Intervals are bisected until the two-half estimate matches the whole-interval
    estimate within the interval's share of `tol`. Returns (value, error estimate).
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if a == b:
        return 0.0, 0.0

    total = 0.0
    error = 0.0
    processed = 0
    stack = [(a, b, _gl(func, a, b, order), tol)]
    while stack:
        lo, hi, whole, local_tol = stack.pop()
        processed += 1
        if processed > max_intervals:
            raise QuadratureError(
                f"quadrature: no convergence on [{a}, {b}] after {max_intervals} subdivisions"
            )
        mid = 0.5 * (lo + hi)
        left = _gl(func, lo, mid, order)
        right = _gl(func, mid, hi, order)
        refined = left + right
        diff = abs(refined - whole)
        if not np.isfinite(diff):
            raise QuadratureError(f"quadrature: non-finite integrand on [{lo}, {hi}]")
        if diff <= local_tol or diff <= 50 * _EPS * abs(refined) or mid in (lo, hi):
            total += refined
            error += diff
        else:
            stack.append((mid, hi, right, 0.5 * local_tol))
            stack.append((lo, mid, left, 0.5 * local_tol))
    logger.debug("adaptive GL on [%s, %s]: %d intervals, error %.3e", a, b, processed, error)
    return total, error


def _simpson_weights(n: int, h: float) -> np.ndarray:
    """Composite Simpson weights for n (even) panels of width h."""
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * h / 3.0


def _composite_simpson_2d(func, x0, x1, y0, y1, n, chunk_rows=256):
    xs = np.linspace(x0, x1, n + 1)
    ys = np.linspace(y0, y1, n + 1)
    wx = _simpson_weights(n, (x1 - x0) / n)
    wy = _simpson_weights(n, (y1 - y0) / n)
    total = 0.0
    for start in range(0, n + 1, chunk_rows):
        stop = min(n + 1, start + chunk_rows)
        X, Y = np.meshgrid(xs[start:stop], ys, indexing="ij")
        values = np.broadcast_to(np.asarray(func(X, Y), dtype=float), X.shape)
        if not np.all(np.isfinite(values)):
            raise QuadratureError("quadrature: non-finite integrand on the cubature grid")
        total += wx[start:stop] @ values @ wy
    return total


def refining_simpson_2d(
    func: Callable[[np.ndarray, np.ndarray], np.ndarray],
    x_range: Tuple[float, float],
    y_range: Tuple[float, float],
    rel_tol: float = 1e-6,
    n0: int = 64,
    max_n: int = 4096,
    abs_floor: float = 1e-14,
) -> Tuple[float, int]:
    """Composite Simpson on an n x n grid compared with the 2n x 2n grid.

    The grid doubles until consecutive levels agree to `rel_tol`; returns
    (value on the finest grid, number of panels per axis).
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be > 0")
    (x0, x1), (y0, y1) = x_range, y_range
    n = max(2, n0 + (n0 % 2))
    coarse = _composite_simpson_2d(func, x0, x1, y0, y1, n)
    while True:
        fine = _composite_simpson_2d(func, x0, x1, y0, y1, 2 * n)
        n *= 2
        if abs(fine - coarse) <= rel_tol * abs(fine) + abs_floor:
            logger.debug("2d Simpson converged with %d panels per axis", n)
            return fine, n
        if 2 * n > max_n:
            raise QuadratureError(
                f"quadrature: relative tolerance {rel_tol:g} not met with {n} panels per axis "
                f"(last change {abs(fine - coarse):.3e})",
                value=float(fine), panels=n, change=float(abs(fine - coarse)),
            )
        coarse = fine
