# stationary_lab/services/curvature_service.py

import cmath
import logging
import math
from functools import lru_cache

import numpy as np

from ..config import Config
from ..errors import (
    BranchTrackingError,
    CodimensionError,
    GaussMapCollisionError,
    NotSpacelikeError,
    QuadratureError,
)
from ..extensions import pool
from ..models.dt_curvature_sample import FLAT_BY_CLASSIFICATION, CurvatureSample
from ..models.dt_stationary_data import StationaryData
from . import holo_expr_service as holo
from .quadrature_service import refining_simpson_2d
from .representation_service import alpha_to_gauss, hermitian_norm

logger = logging.getLogger(__name__)

_COLLISION_TOL = 1e-300


def _require_r14(data: StationaryData):
    if data.m != 2:
        raise CodimensionError(f"codimension: curvature formulas need m = 2, got {data.m}")


@lru_cache(maxsize=64)
def _gauss_derivatives(data: StationaryData):
    g = alpha_to_gauss(data)
    return g, holo.derive(g.phi), holo.derive(g.psi), holo.derive(data.beta)


def conformal_factor(data: StationaryData, z):
    """e^(2 omega) = 2 <alpha, conj(alpha)>."""
    value = 2 * hermitian_norm(data, z)
    if not np.all(value > 0):
        raise NotSpacelikeError(f"not spacelike: conformal factor {np.min(value)!r} <= 0")
    return float(value) if np.ndim(value) == 0 else value


def _complex_curvature(data: StationaryData, z):
    """-K + i Kperp = 4 e^(-2 omega) phi_z conj(psi_z) / (phi - conj(psi))^2, vectorized in z."""
    g, dphi, dpsi, _ = _gauss_derivatives(data)
    z = np.asarray(z, dtype=complex)
    e2omega = conformal_factor(data, z)
    gap = holo.evaluate(g.phi, z) - np.conj(holo.evaluate(g.psi, z))
    if np.any(np.abs(gap) <= _COLLISION_TOL):
        raise GaussMapCollisionError("Gauss map collision: phi = conj(psi)")
    product = holo.evaluate(dphi, z) * np.conj(holo.evaluate(dpsi, z))
    return e2omega, 4.0 / e2omega * product / gap ** 2


def curvatures(data: StationaryData, z) -> CurvatureSample:
    _require_r14(data)
    if data.is_lightlike:
        return CurvatureSample(
            e2omega=conformal_factor(data, z), K=0.0, Kperp=0.0, flag=FLAT_BY_CLASSIFICATION,
        )
    e2omega, value = _complex_curvature(data, complex(z))
    value = complex(value)
    return CurvatureSample(e2omega=float(e2omega), K=-value.real, Kperp=value.imag)


def curvature_fields(data: StationaryData, z):
    """(e^(2 omega), K, Kperp) as arrays over z."""
    _require_r14(data)
    z = np.asarray(z, dtype=complex)
    if data.is_lightlike:
        zeros = np.zeros(z.shape)
        return np.broadcast_to(conformal_factor(data, z), z.shape), zeros, zeros
    e2omega, value = _complex_curvature(data, z)
    return e2omega, -np.real(value), np.imag(value)


def _tracked_log(w: complex, center_arg: float) -> complex:
    if w == 0:
        raise BranchTrackingError("branch tracking: phi - conj(psi) vanishes on the stencil")
    jump = cmath.phase(w) - center_arg
    jump = (jump + math.pi) % (2 * math.pi) - math.pi
    if abs(jump) > math.pi / 2:
        raise BranchTrackingError(f"branch tracking: phase jump {jump:.3f} across the stencil")
    return complex(math.log(abs(w)), center_arg + jump)


def curvature_fd_oracle(data: StationaryData, z, h: float = 1e-3):
    """(K, Kperp) from a five-point Laplacian of log(phi - conj(psi)) in the parameter plane."""
    _require_r14(data)
    if h <= 0:
        raise ValueError("h must be > 0")
    if data.is_lightlike:
        return 0.0, 0.0
    g = alpha_to_gauss(data)
    z = complex(z)

    def gap(w):
        return complex(holo.evaluate(g.phi, w)) - complex(holo.evaluate(g.psi, w)).conjugate()

    center = gap(z)
    if center == 0:
        raise BranchTrackingError("branch tracking: phi - conj(psi) vanishes at the center")
    center_arg = cmath.phase(center)
    log_center = _tracked_log(center, center_arg)
    neighbors = [z + h, z - h, z + 1j * h, z - 1j * h]
    laplacian = (sum(_tracked_log(gap(w), center_arg) for w in neighbors) - 4 * log_center) / h ** 2
    value = laplacian / conformal_factor(data, z)
    return -value.real, value.imag


def _closed_form_parts(data: StationaryData, z):
    """(r, v2, |beta'|^2, |r e^(-i v2) + r^-1 e^(i v2)|^2) over z."""
    g, _, _, dbeta = _gauss_derivatives(data)
    z = np.asarray(z, dtype=complex)
    r = g.r
    v2 = np.imag(holo.evaluate(data.beta, z))
    slope = np.abs(np.broadcast_to(holo.evaluate(dbeta, z), z.shape)) ** 2
    s_sq = np.abs(r * np.exp(-1j * v2) + np.exp(1j * v2) / r) ** 2
    return r, v2, slope, s_sq


def _as_scalar(value):
    return float(value) if np.ndim(value) == 0 else value


def abs_k_density(data: StationaryData, z):
    """|K| e^(2 omega) = 4 |2 + (r^2 + r^-2) cos 2v2| |beta'|^2 / |r e^(-i v2) + r^-1 e^(i v2)|^4."""
    _require_r14(data)
    if data.is_lightlike:
        return _as_scalar(np.zeros(np.shape(z)))
    r, v2, slope, s_sq = _closed_form_parts(data, z)
    value = 4 * np.abs(2 + (r * r + r ** -2) * np.cos(2 * v2)) * slope / s_sq ** 2
    return _as_scalar(value)


def density_reference(data: StationaryData, z):
    """Same numerator over the squared (not fourth power) modulus; reported alongside abs_k_density."""
    _require_r14(data)
    if data.is_lightlike:
        return _as_scalar(np.zeros(np.shape(z)))
    r, v2, slope, s_sq = _closed_form_parts(data, z)
    value = 4 * np.abs(2 + (r * r + r ** -2) * np.cos(2 * v2)) * slope / s_sq
    return _as_scalar(value)


def normal_density(data: StationaryData, z):
    """|Kperp| e^(2 omega) = 4 |(r^2 - r^-2) sin 2v2| |beta'|^2 / |r e^(-i v2) + r^-1 e^(i v2)|^4."""
    _require_r14(data)
    if data.is_lightlike:
        return _as_scalar(np.zeros(np.shape(z)))
    r, v2, slope, s_sq = _closed_form_parts(data, z)
    value = 4 * np.abs((r * r - r ** -2) * np.sin(2 * v2)) * slope / s_sq ** 2
    return _as_scalar(value)


def _integrate_square(density, R: float, tol: float) -> float:
    if not R > 0:
        raise ValueError("R must be > 0")
    value, panels = refining_simpson_2d(
        lambda u1, u2: density(u1 + 1j * u2), (-R, R), (-R, R), rel_tol=tol,
        max_n=Config.CUBATURE_MAX_N,
    )
    logger.debug("square integral over [-%s, %s]^2 with %d panels per axis", R, R, panels)
    return float(value)


def total_curvature(data: StationaryData, R: float, tol: float = None) -> float:
    """Integral of |K| e^(2 omega) over the parameter square [-R, R]^2."""
    tol = Config.TOTAL_CURVATURE_TOL if tol is None else tol
    _require_r14(data)
    if data.is_lightlike:
        return 0.0
    return _integrate_square(lambda z: abs_k_density(data, z), R, tol)


def total_normal_curvature(data: StationaryData, R: float, tol: float = None) -> float:
    tol = Config.TOTAL_CURVATURE_TOL if tol is None else tol
    _require_r14(data)
    if data.is_lightlike:
        return 0.0
    return _integrate_square(lambda z: normal_density(data, z), R, tol)


def total_curvature_table(data: StationaryData, radii, tol: float = None, normal: bool = False) -> list:
    """Partial total curvature for each R, in the order given.

    A square whose cubature does not settle within Config.CUBATURE_MAX_N
    panels keeps the finest-grid value with converged=False, so fast
    oscillating data (beta = sinh z) still shows its growth.
    """
    integrate = total_normal_curvature if normal else total_curvature
    radii = [float(R) for R in radii]

    def measure(R):
        try:
            return integrate(data, R, tol), True
        except QuadratureError as e:
            if "value" not in e.details:
                raise
            logger.warning("R=%s: %s; keeping the finest-grid value", R, e)
            return e.details["value"], False

    results = pool.map_ordered(measure, radii)
    totals = [total for total, _ in results]
    rows = []
    for i, (R, (total, converged)) in enumerate(zip(radii, results)):
        growth = None if i == 0 or totals[i - 1] == 0 else total / totals[i - 1]
        rows.append({"R": R, "total": total, "growth": growth, "converged": converged})
    return rows
