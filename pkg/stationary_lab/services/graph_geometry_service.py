# stationary_lab/services/graph_geometry_service.py

import logging
import math
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from ..config import Config
from ..errors import DegenerateDataError, DimensionError, NotSpacelikeError
from ..extensions import pool
from ..models.dt_graph_surface import CurvePath, GraphSurface
from ..models.dt_metric_sample import CurveLength, MetricSample
from ..models.lt_causal_class import CausalClass
from ..models.lt_projection_character import ProjectionCharacter
from . import holo_expr_service as holo
from .mink_service import causal_class, inner_fields, is_spacelike_pair
from .quadrature_service import adaptive_gauss_legendre

logger = logging.getLogger(__name__)

GRAPH_VARIABLES = ("x1", "x2")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _real_field(expr, x1, x2):
    return np.real(holo.evaluate_env(expr, x1=x1, x2=x2))


def from_expressions(components: Sequence[str], name: str = "expressions") -> GraphSurface:
    """Graph whose components are mini-language expressions in x1, x2 (real part taken)."""
    if not components:
        raise DimensionError("dimension: at least one component is required")
    exprs = [holo.parse(text, GRAPH_VARIABLES) for text in components]
    d1 = [holo.derive(e, "x1") for e in exprs]
    d2 = [holo.derive(e, "x2") for e in exprs]

    def values(x1, x2):
        return np.stack([np.broadcast_to(_real_field(e, x1, x2), np.shape(x1)) for e in exprs])

    def partials(x1, x2):
        p = np.stack([np.broadcast_to(_real_field(e, x1, x2), np.shape(x1)) for e in d1])
        q = np.stack([np.broadcast_to(_real_field(e, x1, x2), np.shape(x1)) for e in d2])
        return p, q

    return GraphSurface(
        m=len(exprs),
        values=values,
        partials=partials,
        name=name,
        source={"kind": "expressions", "components": list(components)},
    )


def constant(value: Sequence[float]) -> GraphSurface:
    value = np.asarray(value, dtype=float)
    zeros = np.zeros_like(value)
    return affine(zeros, zeros, value, name="constant")


def affine(P: Sequence[float], Q: Sequence[float], offset: Sequence[float] = None,
           name: str = "affine") -> GraphSurface:
    """f(x) = offset + x1 P + x2 Q."""
    P, Q = np.asarray(P, dtype=float), np.asarray(Q, dtype=float)
    if P.shape != Q.shape or P.ndim != 1:
        raise DimensionError(f"dimension mismatch: {P.shape} vs {Q.shape}")
    offset = np.zeros_like(P) if offset is None else np.asarray(offset, dtype=float)
    m = P.shape[0]

    def _col(v, x):
        return v.reshape((m,) + (1,) * np.ndim(x))

    def values(x1, x2):
        return _col(offset, x1) + _col(P, x1) * x1 + _col(Q, x1) * x2

    def partials(x1, x2):
        shape = (m,) + np.shape(x1)
        return np.broadcast_to(_col(P, x1), shape), np.broadcast_to(_col(Q, x1), shape)

    return GraphSurface(
        m=m, values=values, partials=partials, name=name,
        source={"kind": "affine", "P": P.tolist(), "Q": Q.tolist(), "offset": offset.tolist()},
    )


def lightlike(h: str, y0: Sequence[float] = (1.0, 1.0)) -> GraphSurface:
    """f = h * y0 with y0 a lightlike vector of R_1^m."""
    y0 = np.asarray(y0, dtype=float)
    if y0.ndim != 1 or y0.shape[0] < 2:
        raise DimensionError("dimension: y0 must be a vector of R_1^m with m >= 2")
    if not np.any(y0) or causal_class(y0) is not CausalClass.LIGHTLIKE:
        raise DegenerateDataError(f"degenerate: y0 = {y0.tolist()} is not a non-zero lightlike vector")
    expr = holo.parse(h, GRAPH_VARIABLES)
    h1, h2 = holo.derive(expr, "x1"), holo.derive(expr, "x2")
    m = y0.shape[0]

    def _scaled(e, x1, x2):
        s = np.broadcast_to(_real_field(e, x1, x2), np.shape(x1))
        return y0.reshape((m,) + (1,) * s.ndim) * s

    return GraphSurface(
        m=m,
        values=lambda x1, x2: _scaled(expr, x1, x2),
        partials=lambda x1, x2: (_scaled(h1, x1, x2), _scaled(h2, x1, x2)),
        name="lightlike",
        source={"kind": "lightlike", "h": h, "y0": y0.tolist()},
    )


def _radial_slope(r, power):
    # h'(r) / r = r^(k-1) / sqrt(1 + r^(2k)) for theta = arctan(t^k)
    return r ** (power - 1) / np.sqrt(1.0 + r ** (2 * power))


def incomplete_example(m: int = 1, power: int = 3) -> GraphSurface:
    """f = (0, ..., 0, h(|x|)) with h(t) = int_0^t sin(arctan(s^power)) ds."""
    if m < 1:
        raise DimensionError(f"dimension: codimension m >= 1 required, got {m}")
    if power < 3 or power % 2 == 0:
        raise ValueError("power must be an odd integer >= 3")

    @lru_cache(maxsize=4096)
    def profile(t: float) -> float:
        value, _ = adaptive_gauss_legendre(
            lambda s: s ** power / np.sqrt(1.0 + s ** (2 * power)), 0.0, t, Config.QUAD_TOL
        )
        return float(np.real(value))

    radial = np.vectorize(lambda r: profile(float(r)), otypes=[float])

    def values(x1, x2):
        out = np.zeros((m,) + np.shape(x1))
        out[-1] = radial(np.hypot(x1, x2))
        return out

    def partials(x1, x2):
        slope = _radial_slope(np.hypot(x1, x2), power)
        p = np.zeros((m,) + np.shape(x1))
        q = np.zeros_like(p)
        p[-1] = slope * x1
        q[-1] = slope * x2
        return p, q

    return GraphSurface(
        m=m, values=values, partials=partials, name="incomplete",
        source={"kind": "incomplete", "m": m, "power": power},
    )


def mww_example() -> GraphSurface:
    """(2 sinh x1 cos(-s x2), 2 cosh x1 cos(-s x2)), s = sqrt(2)/2."""
    s = repr(math.sqrt(2.0) / 2.0)
    surface = from_expressions(
        [f"2*sinh(x1)*cos(-{s}*x2)", f"2*cosh(x1)*cos(-{s}*x2)"], name="mww"
    )
    return surface


def line_path(origin=(0.0, 0.0), direction=(1.0, 0.0)) -> CurvePath:
    ox, oy = map(float, origin)
    dx, dy = map(float, direction)
    return CurvePath(
        position=lambda t: (ox + dx * np.asarray(t), oy + dy * np.asarray(t)),
        velocity=lambda t: (np.full(np.shape(t), dx), np.full(np.shape(t), dy)),
        name=f"line{(ox, oy)}+t{(dx, dy)}",
    )


# ---------------------------------------------------------------------------
# metric
# ---------------------------------------------------------------------------

def jacobian(f: GraphSurface, x: Tuple[float, float]) -> Tuple[np.ndarray, np.ndarray]:
    """p = df/dx1 and q = df/dx2 at x, as vectors of R_1^m."""
    p, q = f.derivatives(float(x[0]), float(x[1]))
    return np.array(p, dtype=float), np.array(q, dtype=float)


def metric_from_pq(p: np.ndarray, q: np.ndarray):
    g11 = 1.0 + inner_fields(p, p)
    g22 = 1.0 + inner_fields(q, q)
    g12 = inner_fields(p, q)
    return g11, g12, g22


def metric_fields(f: GraphSurface, x1, x2) -> dict:
    """Vectorized g11, g12, g22, det and W over arrays; W is NaN where not spacelike."""
    p, q = f.derivatives(x1, x2)
    g11, g12, g22 = metric_from_pq(p, q)
    det = g11 * g22 - g12 * g12
    spacelike = (g11 > 0) & (det > 0)
    with np.errstate(invalid="ignore"):
        W = np.where(spacelike, np.sqrt(np.where(spacelike, det, 1.0)), np.nan)
    return {"g11": g11, "g12": g12, "g22": g22, "det": det, "W": W, "spacelike": spacelike}


def metric_sample(g11: float, g12: float, g22: float) -> MetricSample:
    det = g11 * g22 - g12 * g12
    if not (g11 > 0 and det > 0):
        return MetricSample(g11=g11, g12=g12, g22=g22, spacelike=False)
    W = math.sqrt(det)
    inv = 1.0 / det
    ginv = ((g22 * inv, -g12 * inv), (-g12 * inv, g11 * inv))
    return MetricSample(g11=g11, g12=g12, g22=g22, spacelike=True, W=W, ginv=ginv)


def metric_at(f: GraphSurface, x: Tuple[float, float]) -> MetricSample:
    p, q = jacobian(f, x)
    g11, g12, g22 = (float(g) for g in metric_from_pq(p, q))
    if not is_spacelike_pair(p, q):
        logger.debug("non-spacelike sample of %s at %s", f.name, tuple(x))
        return MetricSample(g11=g11, g12=g12, g22=g22, spacelike=False)
    return metric_sample(g11, g12, g22)


def projection_character(W: float, tol: float = 1e-12) -> ProjectionCharacter:
    if abs(W - 1.0) <= tol:
        return ProjectionCharacter.AREA_PRESERVING
    return ProjectionCharacter.AREA_INCREASING if W < 1.0 else ProjectionCharacter.AREA_DECREASING


def grid_axes(L: float, n: int) -> np.ndarray:
    if n < 2 or L <= 0:
        raise ValueError("grid needs n >= 2 and L > 0")
    return np.linspace(-L, L, n)


def spacelike_region(f: GraphSurface, L: float, n: int):
    """Boolean mask (rows follow x1) of spacelike samples on [-L, L]^2 and their fraction."""
    axis = grid_axes(L, n)
    X1, X2 = np.meshgrid(axis, axis, indexing="ij")
    mask = metric_fields(f, X1, X2)["spacelike"]
    fraction = float(np.mean(mask))
    if fraction < 1.0:
        logger.warning("%s: %.1f%% of the %dx%d samples are not spacelike", f.name,
                       100 * (1 - fraction), n, n)
    return mask, fraction


# ---------------------------------------------------------------------------
# stationarity
# ---------------------------------------------------------------------------

def default_step(x) -> float:
    return Config.FD_STEP * (1.0 + float(np.hypot(x[0], x[1])))


def _fluxes(f: GraphSurface, x1, x2):
    """W g^ij and the rows sum_j W g^ij df/dxj at the given points."""
    p, q = f.derivatives(x1, x2)
    g11, g12, g22 = metric_from_pq(p, q)
    det = g11 * g22 - g12 * g12
    if not np.all((g11 > 0) & (det > 0)):
        raise NotSpacelikeError(f"not spacelike: {f.name} degenerates inside the stencil")
    W = np.sqrt(det)
    a11, a12, a22 = g22 / W, -g12 / W, g11 / W
    return (a11, a12, a22), a11 * p + a12 * q, a12 * p + a22 * q


def stationarity_residual(f: GraphSurface, x: Tuple[float, float], h: float = None) -> np.ndarray:
    """Central-difference divergence of W g^ij (two entries) and of W g^ij df_a/dxj (m entries)."""
    if h is None:
        h = default_step(x)
    if h <= 0:
        raise ValueError("h must be > 0")
    x1, x2 = float(x[0]), float(x[1])
    sx1 = np.array([x1 + h, x1 - h, x1, x1])
    sx2 = np.array([x2, x2, x2 + h, x2 - h])
    (a11, a12, a22), row1, row2 = _fluxes(f, sx1, sx2)

    def d1(v):
        return (v[..., 0] - v[..., 1]) / (2 * h)

    def d2(v):
        return (v[..., 2] - v[..., 3]) / (2 * h)

    tangential = np.array([d1(a11) + d2(a12), d1(a12) + d2(a22)])
    normal = d1(row1) + d2(row2)
    return np.concatenate([tangential, normal])


def max_residual(f: GraphSurface, points, h: float = None) -> float:
    points = list(points)
    norms = pool.map_ordered(lambda x: float(np.max(np.abs(stationarity_residual(f, x, h)))), points)
    return max(norms) if norms else 0.0


def residual_order(f: GraphSurface, points, h: float) -> float:
    """Observed ratio residual(h) / residual(h/2); about 4 for a second-order stencil."""
    coarse = max_residual(f, points, h)
    fine = max_residual(f, points, h / 2)
    if fine == 0.0:
        return math.inf if coarse > 0 else 4.0
    return coarse / fine


# ---------------------------------------------------------------------------
# lengths
# ---------------------------------------------------------------------------

def _speed(f: GraphSurface, path: CurvePath, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    x1, x2 = path.position(t)
    v1, v2 = path.velocity(t)
    p, q = f.derivatives(x1, x2)
    g11, g12, g22 = metric_from_pq(p, q)
    if not np.all((g11 > 0) & (g11 * g22 - g12 * g12 > 0)):
        raise NotSpacelikeError(f"not spacelike: {f.name} along {path.name}")
    return np.sqrt(np.maximum(g11 * v1 * v1 + 2 * g12 * v1 * v2 + g22 * v2 * v2, 0.0))


def _tail_bound(speed, T: float, sign: float) -> float:
    """Bound on the length beyond sign*T assuming power decay C t^-k, fitted at T and 2T."""
    rho1 = float(speed(np.array([sign * T]))[0])
    rho2 = float(speed(np.array([sign * 2 * T]))[0])
    if rho1 == 0.0 and rho2 == 0.0:
        return 0.0
    if rho2 <= 0.0 or rho1 <= rho2:
        return math.inf
    k = math.log(rho1 / rho2) / math.log(2.0)
    if k <= 1.0:
        return math.inf
    C = max(rho1 * T ** k, rho2 * (2 * T) ** k)
    return C * T ** (1.0 - k) / (k - 1.0)


def curve_length(f: GraphSurface, path: CurvePath, t0: float, t1: float,
                 tol: float = None, T: float = None) -> CurveLength:
    """Induced length of t -> (path(t), f(path(t))); infinite ends are cut at +-T with a tail bound."""
    tol = Config.QUAD_TOL if tol is None else tol
    T = Config.TAIL_T if T is None else T
    if not t0 < t1:
        raise ValueError("t0 < t1 required")
    lo = -T if math.isinf(t0) else t0
    hi = T if math.isinf(t1) else t1
    if not lo < hi:
        raise ValueError(f"cut-off T={T} leaves an empty range")

    def speed(t):
        return _speed(f, path, t)

    value, error = adaptive_gauss_legendre(speed, lo, hi, tol)
    tail_lower = _tail_bound(speed, T, -1.0) if math.isinf(t0) else 0.0
    tail_upper = _tail_bound(speed, T, 1.0) if math.isinf(t1) else 0.0
    result = CurveLength(
        value=float(np.real(value)), t_range=(lo, hi),
        tail_lower=tail_lower, tail_upper=tail_upper, error=float(error),
    )
    if not result.finite:
        logger.warning("%s: length along %s does not show integrable decay", f.name, path.name)
    return result


def euclidean_length(path: CurvePath, t0: float, t1: float, tol: float = None) -> float:
    """Length of the projected curve in the base plane."""
    tol = Config.QUAD_TOL if tol is None else tol

    def speed(t):
        v1, v2 = path.velocity(np.asarray(t, dtype=float))
        return np.hypot(v1, v2)

    value, _ = adaptive_gauss_legendre(speed, t0, t1, tol)
    return float(np.real(value))
