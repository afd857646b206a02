# stationary_lab/services/lewy_service.py
"""Potentials xi of the stationarity 1-forms and the Lewy map eta = x + xi.

    omega_1 = (g11 dx1 + g12 dx2) / W,   omega_2 = (g12 dx1 + g22 dx2) / W

Both forms are closed exactly when the graph is stationary, and (eta_1, eta_2)
are then isothermal parameters with conformal factor (1/l1 + 1/l2)^-2.
"""

import logging
import math
from typing import Tuple

import numpy as np

from ..config import Config
from ..errors import NotSpacelikeError
from ..extensions import pool
from ..models.dt_graph_surface import GraphSurface
from ..models.dt_lewy_sample import LewySample
from ..models.dt_metric_sample import MetricSample
from .graph_geometry_service import grid_axes, metric_at, metric_from_pq
from .quadrature_service import adaptive_gauss_legendre

logger = logging.getLogger(__name__)

CLOSEDNESS_WARN = 1e-6

Point = Tuple[float, float]


def _omega(f: GraphSurface, x1, x2):
    """Coefficient fields (g11, g12, g22) / W."""
    p, q = f.derivatives(x1, x2)
    g11, g12, g22 = metric_from_pq(p, q)
    det = g11 * g22 - g12 * g12
    if not np.all((g11 > 0) & (det > 0)):
        raise NotSpacelikeError(f"not spacelike: {f.name} on the integration path")
    W = np.sqrt(det)
    return g11 / W, g12 / W, g22 / W


def _leg(f: GraphSurface, start: Point, end: Point, tol: float) -> np.ndarray:
    """Integral of (omega_1, omega_2) along an axis-parallel segment."""
    if start == end:
        return np.zeros(2)
    horizontal = start[1] == end[1]
    if not horizontal and start[0] != end[0]:
        raise ValueError("legs must be axis parallel")

    def coefficients(t):
        if horizontal:
            w11, w12, w22 = _omega(f, t, np.full_like(t, start[1]))
            return w11, w12
        w11, w12, w22 = _omega(f, np.full_like(t, start[0]), t)
        return w12, w22

    lo, hi = (start[0], end[0]) if horizontal else (start[1], end[1])
    xi1, _ = adaptive_gauss_legendre(lambda t: coefficients(np.asarray(t, dtype=float))[0], lo, hi, tol)
    xi2, _ = adaptive_gauss_legendre(lambda t: coefficients(np.asarray(t, dtype=float))[1], lo, hi, tol)
    return np.array([float(np.real(xi1)), float(np.real(xi2))])


def closedness_residual(f: GraphSurface, x: Point, h: float = None) -> Tuple[float, float]:
    """|d2 (omega_1)_1 - d1 (omega_1)_2| and the same for omega_2, by central differences."""
    h = Config.FD_STEP if h is None else h
    x1, x2 = float(x[0]), float(x[1])
    sx1 = np.array([x1 + h, x1 - h, x1, x1])
    sx2 = np.array([x2, x2, x2 + h, x2 - h])
    w11, w12, w22 = _omega(f, sx1, sx2)
    r1 = (w11[2] - w11[3]) / (2 * h) - (w12[0] - w12[1]) / (2 * h)
    r2 = (w12[2] - w12[3]) / (2 * h) - (w22[0] - w22[1]) / (2 * h)
    return abs(float(r1)), abs(float(r2))


def xi_potentials(f: GraphSurface, x: Point, base: Point = (0.0, 0.0), tol: float = None,
                  x1_first: bool = True):
    """xi(x) with xi(base) = 0, integrated along an L-shaped path.

    Returns (xi, warning); the warning is set when the forms fail to be closed at x.
    """
    tol = Config.QUAD_TOL if tol is None else tol
    base = (float(base[0]), float(base[1]))
    x = (float(x[0]), float(x[1]))
    corner = (x[0], base[1]) if x1_first else (base[0], x[1])
    xi = _leg(f, base, corner, tol) + _leg(f, corner, x, tol)
    warning = None
    residual = max(closedness_residual(f, x))
    if residual > CLOSEDNESS_WARN:
        warning = f"1-forms not closed at {x}: residual {residual:.3e}"
        logger.warning("%s: %s", f.name, warning)
    return (float(xi[0]), float(xi[1])), warning


def lewy_map(f: GraphSurface, x: Point, base: Point = (0.0, 0.0), tol: float = None) -> Point:
    xi, _ = xi_potentials(f, x, base, tol)
    return float(x[0]) + xi[0], float(x[1]) + xi[1]


def jacobian_from_metric(sample: MetricSample):
    """(J_L, (lambda_1, lambda_2)) for a spacelike metric sample; lambda_i^2 are the eigenvalues of g."""
    if not sample.spacelike:
        raise NotSpacelikeError("not spacelike: J_L needs a positive definite metric")
    g = sample.matrix()
    JL = np.eye(2) + g / sample.W
    eig = np.linalg.eigvalsh(g)
    lambdas = (math.sqrt(eig[0]), math.sqrt(eig[1]))
    return JL, lambdas


def lewy_jacobian(f: GraphSurface, x: Point):
    return jacobian_from_metric(metric_at(f, x))


def lewy_sample(f: GraphSurface, x: Point, base: Point = (0.0, 0.0), tol: float = None) -> LewySample:
    xi, warning = xi_potentials(f, x, base, tol)
    JL, lambdas = lewy_jacobian(f, x)
    x = (float(x[0]), float(x[1]))
    return LewySample(
        x=x, xi=xi, eta=(x[0] + xi[0], x[1] + xi[1]), JL=JL, lambdas=lambdas, warning=warning,
    )


def path_independence(f: GraphSurface, x: Point, base: Point = (0.0, 0.0), tol: float = None) -> float:
    """Distance between xi computed along the two L-shaped paths."""
    xi_a, _ = xi_potentials(f, x, base, tol, x1_first=True)
    xi_b, _ = xi_potentials(f, x, base, tol, x1_first=False)
    return float(np.hypot(xi_a[0] - xi_b[0], xi_a[1] - xi_b[1]))


def _grid_points(L: float, n: int):
    axis = grid_axes(L, n)
    return [(float(u), float(v)) for u in axis for v in axis]


def _lewy_differential(f, x, base, tol, h):
    """D = d eta / dx by central differences of the Lewy map."""
    D = np.empty((2, 2))
    for j in range(2):
        step = np.zeros(2)
        step[j] = h
        plus = lewy_map(f, (x[0] + step[0], x[1] + step[1]), base, tol)
        minus = lewy_map(f, (x[0] - step[0], x[1] - step[1]), base, tol)
        D[:, j] = (np.array(plus) - np.array(minus)) / (2 * h)
    return D


def _conformal_point(f, x, base, tol, h):
    sample = metric_at(f, x)
    _, lambdas = jacobian_from_metric(sample)
    conf = (1.0 / lambdas[0] + 1.0 / lambdas[1]) ** -2
    Dinv = np.linalg.inv(_lewy_differential(f, x, base, tol, h))
    G = Dinv.T @ sample.matrix() @ Dinv
    return (
        abs(G[0, 0] - G[1, 1]) / G[0, 0],
        abs(G[0, 1]) / G[0, 0],
        abs(G[0, 0] - conf) / G[0, 0],
    )


def conformal_check(f: GraphSurface, L: float, n: int, base: Point = (0.0, 0.0),
                    tol: float = None, fd_step: float = 1e-4) -> dict:
    """Pull the metric back to the eta chart on an n x n grid and measure how far it is from conf * I."""
    points = _grid_points(L, n)
    rows = pool.map_ordered(lambda x: _conformal_point(f, x, base, tol, fd_step), points)
    rows = np.asarray(rows)
    return {
        "anisotropy": float(np.max(rows[:, 0])),
        "off_diagonal": float(np.max(rows[:, 1])),
        "conf_deviation": float(np.max(rows[:, 2])),
        "points": len(points),
        "fd_step": fd_step,
    }


def _beta_pair(f: GraphSurface, x1: float, x2: float) -> np.ndarray:
    """(beta_1, beta_2) = d(x1, x2)/d zeta with dx/deta = J_L^-1."""
    JL, _ = lewy_jacobian(f, (x1, x2))
    Dinv = np.linalg.inv(JL)
    return 0.5 * (Dinv[:, 0] - 1j * Dinv[:, 1])


def _holomorphy_point(f, x, h):
    x1, x2 = x
    beta = _beta_pair(f, x1, x2)
    d_x1 = (_beta_pair(f, x1 + h, x2) - _beta_pair(f, x1 - h, x2)) / (2 * h)
    d_x2 = (_beta_pair(f, x1, x2 + h) - _beta_pair(f, x1, x2 - h)) / (2 * h)
    JL, _ = lewy_jacobian(f, x)
    Dinv = np.linalg.inv(JL)
    # d/d zeta-bar = (d/d eta_1 + i d/d eta_2) / 2 with d/d eta_k = sum_j Dinv[j, k] d/dx_j
    d_eta1 = Dinv[0, 0] * d_x1 + Dinv[1, 0] * d_x2
    d_eta2 = Dinv[0, 1] * d_x1 + Dinv[1, 1] * d_x2
    cr = float(np.max(np.abs(0.5 * (d_eta1 + 1j * d_eta2))))
    orientation = float(-4 * np.imag(np.conj(beta[0]) * beta[1]))
    return cr, orientation


def beta_holomorphy_check(f: GraphSurface, L: float, n: int, fd_step: float = 1e-4) -> dict:
    """Cauchy-Riemann residual of beta_l = dx_l/dzeta in the eta chart and the sign of -4 Im(conj(beta_1) beta_2)."""
    points = _grid_points(L, n)
    rows = np.asarray(pool.map_ordered(lambda x: _holomorphy_point(f, x, fd_step), points))
    return {
        "cr_residual": float(np.max(rows[:, 0])),
        "orientation_min": float(np.min(rows[:, 1])),
        "orientation_positive": bool(np.all(rows[:, 1] > 0)),
        "points": len(points),
        "fd_step": fd_step,
    }


def closedness_report(f: GraphSurface, L: float, n: int, h: float = None) -> dict:
    points = _grid_points(L, n)
    residuals = pool.map_ordered(lambda x: max(closedness_residual(f, x, h)), points)
    return {"max_residual": float(max(residuals)), "points": len(points)}


def jacobian_report(f: GraphSurface, L: float, n: int) -> dict:
    """Smallest eigenvalue and determinant range of J_L over the grid."""
    points = _grid_points(L, n)
    mats = [lewy_jacobian(f, x)[0] for x in points]
    min_eig = min(float(np.min(np.linalg.eigvalsh(JL))) for JL in mats)
    dets = [float(np.linalg.det(JL)) for JL in mats]
    return {"min_eigenvalue": min_eig, "min_det": min(dets), "max_det": max(dets), "points": len(points)}
