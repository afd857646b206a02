# stationary_lab/services/representation_service.py

import cmath
import logging
import math
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from ..config import Config
from ..errors import (
    CodimensionError,
    ConfigError,
    DegenerateDataError,
    DimensionError,
    EvaluationError,
)
from ..extensions import pool
from ..models.dt_graph_surface import GraphSurface
from ..models.dt_holo_expr import Call, Div, HoloExpr, Mul, Num, Pow
from ..models.dt_mink_vector import MinkVector
from ..models.dt_stationary_data import LIGHTLIKE, GaussData, StationaryData
from ..models.lt_bernstein_case import (
    AreaIncreasingCase,
    AreaIncreasingVerdict,
    BernsteinCase,
    Classification,
)
from . import holo_expr_service as holo
from .mink_service import complex_mink_inner

logger = logging.getLogger(__name__)

ExprLike = Union[str, HoloExpr]


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def principal_sqrt(w: complex) -> complex:
    """Square root with Im >= 0, and Re > 0 when the root is real."""
    s = cmath.sqrt(complex(w))
    if s.imag < 0 or (s.imag == 0 and s.real < 0):
        s = -s
    return s


def _contains_quotient(node) -> bool:
    if isinstance(node, Div) or (isinstance(node, Pow) and node.exponent < 0):
        return True
    return any(_contains_quotient(child) for child in node.children)


def _entire_beta(beta: ExprLike) -> HoloExpr:
    expr = beta if isinstance(beta, HoloExpr) else holo.parse(beta)
    if _contains_quotient(expr.ast):
        raise ConfigError(f"beta must be entire; quotients are not accepted in {expr.source!r}")
    return expr


def make_lightlike(beta: ExprLike = "z", v: Sequence[float] = None, m: int = 2) -> StationaryData:
    """Degenerate family c = -i: f = Re(beta - beta(0)) (v, 1), W = 1."""
    if m < 2:
        raise CodimensionError(f"codimension: m >= 2 required, got {m}")
    v = (1.0,) + (0.0,) * (m - 2) if v is None else tuple(float(x) for x in v)
    if len(v) != m - 1:
        raise DimensionError(f"dimension: v needs {m - 1} entries, got {len(v)}")
    norm = math.sqrt(sum(x * x for x in v))
    if abs(norm - 1.0) > 1e-12:
        raise DegenerateDataError(f"degenerate: |v| = {norm} must be 1")
    return StationaryData(
        a=0.0, b=1.0, consts=(), beta=_entire_beta(beta), m=m, mu=0j, family=LIGHTLIKE, v=v,
    )


def make_canonical(a: float, b: float, consts: Sequence[float] = (), beta: ExprLike = "z",
                   m: int = 2) -> StationaryData:
    a, b = float(a), float(b)
    consts = tuple(float(d) for d in consts)
    if not b > 0:
        raise DegenerateDataError(f"degenerate: b > 0 required, got {b}")
    if m < 2:
        raise CodimensionError(f"codimension: m >= 2 required, got {m}")
    if len(consts) != m - 2:
        raise DimensionError(f"dimension: {m - 2} constant components expected, got {len(consts)}")
    c = complex(a, -b)
    mu_sq = -(1 + c * c + sum(d * d for d in consts)) / 4
    if abs(mu_sq) <= Config.CASE_TOL:
        if not consts and abs(c + 1j) <= Config.CASE_TOL:
            logger.info("a=0, b=1 is the lightlike family; returning it for beta=%r", str(beta))
            return make_lightlike(beta, m=2)
        raise DegenerateDataError("degenerate: mu = 0 for this choice of a, b and constants")
    return StationaryData(
        a=a, b=b, consts=consts, beta=_entire_beta(beta), m=m, mu=principal_sqrt(mu_sq),
    )


def data_from_dict(payload: dict) -> StationaryData:
    """Inverse of StationaryData.to_dict."""
    try:
        m = int(payload.get("m", 2))
        beta = payload.get("beta", "z")
        if payload.get("family") == LIGHTLIKE:
            return make_lightlike(beta, payload.get("v"), m)
        return make_canonical(payload["a"], payload["b"], payload.get("consts", []), beta, m)
    except (KeyError, TypeError) as e:
        raise ConfigError(f"invalid stationary data {payload!r}: {e}")


# ---------------------------------------------------------------------------
# alpha
# ---------------------------------------------------------------------------

def _expr(node) -> HoloExpr:
    return HoloExpr(ast=node, source=holo.to_text(node))


@lru_cache(maxsize=64)
def alpha_exprs(data: StationaryData):
    """The 2+m components of alpha = dx/dz as expressions in z."""
    head = [Num(0.5), Num(data.c / 2)]
    if data.is_lightlike:
        dbeta = holo.derive(data.beta).ast
        tail = [Mul(Num(vk / 2), dbeta) for vk in data.v] + [Mul(Num(0.5), dbeta)]
    else:
        beta = data.beta.ast
        tail = [Num(d / 2) for d in data.consts]
        tail += [Mul(Num(data.mu), Call("cosh", beta)), Mul(Num(data.mu), Call("sinh", beta))]
    return tuple(holo.simplify(_expr(node)) for node in head + tail)


def alpha_at(data: StationaryData, z) -> np.ndarray:
    """alpha(z) stacked along the first axis: shape (2+m,) + shape(z)."""
    z = np.asarray(z, dtype=complex)
    return np.stack([np.broadcast_to(holo.evaluate(e, z), z.shape) for e in alpha_exprs(data)])


def isotropy_defect(data: StationaryData, z):
    """<alpha, alpha>, identically zero for valid data."""
    alpha = alpha_at(data, z)
    return complex_mink_inner(alpha, alpha)


def hermitian_norm(data: StationaryData, z):
    """<alpha, conj(alpha)>; the induced metric is 2 <alpha, conj(alpha)> |dz|^2."""
    alpha = alpha_at(data, z)
    return np.real(complex_mink_inner(alpha, np.conj(alpha)))


def completeness_bound(data: StationaryData) -> float:
    c = data.c
    return (1 + abs(c) ** 2 - abs(1 + c * c + data.sum_d2)) / 2


# ---------------------------------------------------------------------------
# Weierstrass data
# ---------------------------------------------------------------------------

def gauss_from_expressions(phi: str, psi: str, hprime: str) -> GaussData:
    return GaussData(phi=holo.parse(phi), psi=holo.parse(psi), hprime=holo.parse(hprime))


def weierstrass_to_alpha(g: GaussData, z) -> np.ndarray:
    """(phi + psi, -i (phi - psi), 1 - phi psi, 1 + phi psi) h'."""
    phi, psi, hp = (holo.evaluate(e, z) for e in (g.phi, g.psi, g.hprime))
    alpha = np.stack([
        np.asarray((phi + psi) * hp),
        np.asarray(-1j * (phi - psi) * hp),
        np.asarray((1 - phi * psi) * hp),
        np.asarray((1 + phi * psi) * hp),
    ])
    if not np.all(np.isfinite(alpha)):
        raise EvaluationError("evaluation: non-finite Weierstrass data")
    return alpha


def alpha_to_gauss(data: StationaryData) -> GaussData:
    if data.m != 2:
        raise CodimensionError(f"codimension: Gauss maps need m = 2, got {data.m}")
    if data.is_lightlike or data.mu == 0:
        raise DegenerateDataError("degenerate (case ii): mu = 0 has no Gauss map representation")
    c, mu = data.c, data.mu
    phi_coef = (1 + c * 1j) / (2 * mu)
    psi_coef = (1 - c * 1j) / (2 * mu)
    beta = data.beta.ast
    neg_exp = Call("exp", Mul(Num(-1), beta))
    return GaussData(
        phi=_expr(Mul(Num(phi_coef), neg_exp)),
        psi=_expr(Mul(Num(psi_coef), neg_exp)),
        hprime=_expr(Mul(Num(mu / 2), Call("exp", beta))),
        r=abs(phi_coef),
        theta=cmath.phase(phi_coef),
        phi_coef=phi_coef,
        psi_coef=psi_coef,
    )


# ---------------------------------------------------------------------------
# surface and graph
# ---------------------------------------------------------------------------

def _affine_coefficients(beta: HoloExpr):
    """(lambda, kappa) with beta = lambda z + kappa, or None."""
    if not holo.is_affine(beta):
        return None
    lam = complex(holo.evaluate(holo.derive(beta), 0.0))
    kappa = complex(holo.evaluate(beta, 0.0))
    return lam, kappa


def _closed_form(data: StationaryData, z: np.ndarray):
    """x(z) = 2 Re int_0^z alpha, where an antiderivative is known; None otherwise."""
    head = [np.real(z), np.real(data.c * z)]
    if data.is_lightlike:
        h = np.real(holo.evaluate(data.beta, z) - holo.evaluate(data.beta, 0.0))
        h = np.broadcast_to(h, z.shape)
        return np.stack(head + [vk * h for vk in data.v] + [h])
    coefficients = _affine_coefficients(data.beta)
    if coefficients is None:
        return None
    lam, kappa = coefficients
    mu = data.mu
    middle = [d * np.real(z) for d in data.consts]
    if lam == 0:
        x_cosh = 2 * np.real(mu * cmath.cosh(kappa) * z)
        x_sinh = 2 * np.real(mu * cmath.sinh(kappa) * z)
    else:
        w = lam * z + kappa
        x_cosh = 2 * np.real(mu * (np.sinh(w) - cmath.sinh(kappa)) / lam)
        x_sinh = 2 * np.real(mu * (np.cosh(w) - cmath.cosh(kappa)) / lam)
    return np.stack(head + middle + [x_cosh, x_sinh])


def _quadrature_point(data: StationaryData, z: complex, exprs, tol: float) -> np.ndarray:
    return np.array([2 * holo.integrate_segment(e, 0.0, z, tol).real for e in exprs])


def synthesize(data: StationaryData, z, method: str = "auto", tol: float = None) -> np.ndarray:
    """Points of the surface, shape (2+m,) + shape(z); base point x(0) = 0."""
    z = np.asarray(z, dtype=complex)
    if method not in ("auto", "closed", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    if method != "quadrature":
        out = _closed_form(data, z)
        if out is not None:
            return out
        if method == "closed":
            raise DegenerateDataError(f"degenerate: no closed form for beta={data.beta.source!r}")
    tol = Config.QUAD_TOL if tol is None else tol
    exprs = alpha_exprs(data)
    flat = z.ravel()
    points = pool.map_ordered(lambda w: _quadrature_point(data, complex(w), exprs, tol), flat)
    return np.stack(points, axis=-1).reshape((data.n,) + z.shape)


def synthesize_point(data: StationaryData, z, method: str = "auto") -> MinkVector:
    return MinkVector(synthesize(data, complex(z), method))


def chart(data: StationaryData, x1, x2):
    """Inverse of x1 = u1, x2 = a u1 + b u2, returned as z = u1 + i u2."""
    x1, x2 = np.asarray(x1, dtype=float), np.asarray(x2, dtype=float)
    return x1 + 1j * (x2 - data.a * x1) / data.b


def graph_eval(data: StationaryData, x1, x2) -> np.ndarray:
    return synthesize(data, chart(data, x1, x2))[2:]


def graph_surface(data: StationaryData) -> GraphSurface:
    """The graph of data as a GraphSurface with analytic first derivatives."""
    d1 = 1 - 1j * data.a / data.b
    d2 = 1j / data.b

    def values(x1, x2):
        return graph_eval(data, x1, x2)

    def partials(x1, x2):
        alpha = alpha_at(data, chart(data, x1, x2))[2:]
        return 2 * np.real(alpha * d1), 2 * np.real(alpha * d2)

    return GraphSurface(
        m=data.m, values=values, partials=partials, name=f"{data.family}-graph",
        source={"kind": "stationary", "data": data.to_dict()},
    )


# ---------------------------------------------------------------------------
# W-function
# ---------------------------------------------------------------------------

def w_of(data: StationaryData, z):
    """W = (1 + |c|^2 + 4(|alpha_3|^2 + ... - |alpha_(2+m)|^2)) / (2b)."""
    alpha = alpha_at(data, z)
    spatial = np.sum(np.abs(alpha[2:-1]) ** 2, axis=0)
    value = (1 + abs(data.c) ** 2 + 4 * (spatial - np.abs(alpha[-1]) ** 2)) / (2 * data.b)
    return float(value) if np.ndim(value) == 0 else value


def w_closed_form(data: StationaryData, z):
    """(1 + |c|^2 + sum d^2 + |1 + c^2 + sum d^2| cos(2 Im beta)) / (2b) for the canonical family."""
    if data.is_lightlike:
        return np.ones(np.shape(z)) if np.ndim(z) else 1.0
    c, s = data.c, data.sum_d2
    v2 = np.imag(holo.evaluate(data.beta, z))
    value = (1 + abs(c) ** 2 + s + abs(1 + c * c + s) * np.cos(2 * v2)) / (2 * data.b)
    return float(value) if np.ndim(value) == 0 else value


def w_range(data: StationaryData):
    """(r1, r2): infimum and supremum of W for non-constant beta."""
    if data.is_lightlike:
        return 1.0, 1.0
    c, s = data.c, data.sum_d2
    base, amplitude = 1 + abs(c) ** 2 + s, abs(1 + c * c + s)
    return (base - amplitude) / (2 * data.b), (base + amplitude) / (2 * data.b)


def w_grid(data: StationaryData, L: float, n: int):
    """W over an n x n grid of [-L, L]^2 in graph coordinates (rows follow x1).

    Uses the closed form: the component formula cancels catastrophically once |u1| is large.
    """
    if n < 2 or L <= 0:
        raise ValueError("grid needs n >= 2 and L > 0")
    axis = np.linspace(-L, L, n)
    X1, X2 = np.meshgrid(axis, axis, indexing="ij")
    return X1, X2, w_closed_form(data, chart(data, X1, X2))


def w_statistics(data: StationaryData, L: float, n: int) -> dict:
    _, _, W = w_grid(data, L, n)
    w_min, w_max = float(np.min(W)), float(np.max(W))
    return {
        "min": w_min,
        "max": w_max,
        "product": w_min * w_max,
        "spread": w_max - w_min,
        "grid": {"L": L, "n": n},
    }


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def classify(data: StationaryData) -> Classification:
    trichotomy = data.m == 2
    if holo.is_constant(data.beta):
        w0 = w_of(data, 0.0)
        return Classification(BernsteinCase.CASE_I, w0, w0, trichotomy=trichotomy)
    if data.is_lightlike or (abs(data.c + 1j) <= Config.CASE_TOL and not data.consts):
        return Classification(
            BernsteinCase.CASE_II, 1.0, 1.0, y0=tuple(data.v) + (1.0,), trichotomy=trichotomy
        )
    r1, r2 = w_range(data)
    return Classification(BernsteinCase.CASE_III, r1, r2, trichotomy=trichotomy)


def classify_area_increasing(data: StationaryData) -> AreaIncreasingVerdict:
    """Whether W <= 1 everywhere is possible, following the constancy of the alpha components."""
    constant = [holo.is_constant(e) for e in alpha_exprs(data)]
    if all(constant):
        w0 = w_of(data, 0.0)
        return AreaIncreasingVerdict(
            AreaIncreasingCase.ALL_CONSTANT, w0 <= 1 + Config.CASE_TOL,
            f"affine graph with constant W = {w0!r}",
        )
    if constant[-1]:
        return AreaIncreasingVerdict(
            AreaIncreasingCase.LAST_CONSTANT, False,
            "a non-constant spacelike component makes W >= 2 somewhere",
        )
    if abs(data.c + 1j) > Config.CASE_TOL:
        return AreaIncreasingVerdict(
            AreaIncreasingCase.LAST_NONCONSTANT, False,
            "(1 + |c|^2) / (2b) > 1 forces W > 1 where the last component is small",
        )
    return AreaIncreasingVerdict(
        AreaIncreasingCase.LIGHTLIKE, True, "f = h y0 + y1 with y0 lightlike and W = 1",
    )


def case_iii_for_ratio(r: float, beta: ExprLike = "z") -> StationaryData:
    """b = 1 data whose W ranges over [1/r, r]."""
    if not r > 1:
        raise ValueError("r > 1 required")
    a = math.sqrt(r) - 1 / math.sqrt(r)
    return make_canonical(a, 1.0, (), beta, 2)


def construct_ber3(C: float, eps: float, m: int = 3) -> StationaryData:
    """Data with inf W * sup W = C and 0 < sup W - inf W < eps."""
    if C < 1:
        raise DegenerateDataError(f"degenerate: C >= 1 required, got {C}")
    if not eps > 0:
        raise DegenerateDataError(f"degenerate: eps > 0 required, got {eps}")
    if m < 3:
        raise CodimensionError(f"codimension: m >= 3 required, got {m}")
    d = math.sqrt(C - 1)
    root = math.sqrt(C)
    b = root + min(eps / (4 * root), 0.01)
    consts = [0.0] * (m - 3) + [d]
    data = make_canonical(0.0, b, consts, "z", m)
    r1, r2 = w_range(data)
    logger.info("ber3 data C=%s eps=%s: b=%.17g, inf W=%.17g, sup W=%.17g", C, eps, b, r1, r2)
    return data


# ---------------------------------------------------------------------------
# value distribution of W
# ---------------------------------------------------------------------------

def ber1_check(data: StationaryData, L: float, n: int, tol: float = 1e-12) -> dict:
    """Samples with W > 1 and W < 1 coexist exactly for CaseIII."""
    _, _, W = w_grid(data, L, n)
    above = bool(np.any(W > 1 + tol))
    below = bool(np.any(W < 1 - tol))
    case = classify(data).case
    coexist = above and below
    return {
        "case": case.value,
        "above": above,
        "below": below,
        "coexist": coexist,
        "consistent": coexist == (case is BernsteinCase.CASE_III),
    }


def crossing_counts(W: np.ndarray, levels) -> list:
    """Number of grid edges (along both axes) on which W - level changes sign."""
    counts = []
    for level in levels:
        sign = np.sign(W - level)
        rows = np.count_nonzero(sign[1:, :] * sign[:-1, :] < 0)
        cols = np.count_nonzero(sign[:, 1:] * sign[:, :-1] < 0)
        exact = np.count_nonzero(sign == 0)
        counts.append(int(rows + cols + exact))
    return counts


def attainment(data: StationaryData, L: float = 20.0, n: int = 401, delta: float = 0.05,
               levels=None, N: int = 10) -> dict:
    r1, r2 = w_range(data)
    if levels is None:
        if r2 - r1 <= 2 * delta:
            raise DegenerateDataError(f"degenerate: W range [{r1}, {r2}] narrower than 2*delta")
        levels = np.linspace(r1 + delta, r2 - delta, 21)
    levels = [float(x) for x in levels]
    _, _, W = w_grid(data, L, n)
    counts = crossing_counts(W, levels)
    return {
        "levels": levels,
        "counts": counts,
        "min_count": min(counts) if counts else 0,
        "required": N,
        "passed": all(count >= N for count in counts),
    }
