# stationary_lab/services/scenario_service.py
"""Catalog of reproducible checks; each scenario turns a ScenarioConfig into a Report."""

import logging
import math
from typing import Callable, Dict, NamedTuple, Union

import numpy as np

from ..config import Config
from ..errors import ConfigError, NotSpacelikeError, UnknownScenarioError
from ..extensions import pool
from ..models.dt_graph_surface import GraphSurface
from ..models.dt_report import PLUMBING, Report
from ..models.dt_scenario_config import GraphSpec, GridSpec, ScenarioConfig, StationaryDataSpec
from ..models.dt_stationary_data import StationaryData
from ..models.lt_bernstein_case import AreaIncreasingCase, BernsteinCase
from . import curvature_service as curv
from . import graph_geometry_service as geo
from . import lewy_service as lewy
from . import representation_service as rep

logger = logging.getLogger(__name__)


DataDefault = Union[StationaryDataSpec, Callable[[ScenarioConfig], StationaryData], None]


class Scenario(NamedTuple):
    run: Callable[[ScenarioConfig], Report]
    description: str
    grid: GridSpec
    anchor: str
    # surface used for exports when the config carries no data
    data: DataDefault = None


SCENARIOS: Dict[str, Scenario] = {}


def scenario(name: str, description: str, L: float, n: int, anchor: str, data: DataDefault = None):
    def register(fn):
        SCENARIOS[name] = Scenario(fn, description, GridSpec(L=L, n=n), anchor, data)
        return fn
    return register


def list_scenarios() -> list:
    return [
        {"name": name, "description": s.description, "grid": s.grid.model_dump(), "anchor": s.anchor,
         "has_data": s.data is not None}
        for name, s in SCENARIOS.items()
    ]


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def build_data(spec: StationaryDataSpec) -> StationaryData:
    return rep.data_from_dict(spec.model_dump(exclude_none=True))


def build_graph(spec: GraphSpec) -> GraphSurface:
    if spec.kind == "expressions":
        if not spec.components:
            raise ConfigError("graph.components is empty")
        return geo.from_expressions(spec.components)
    if spec.kind == "lightlike":
        return geo.lightlike(spec.h, spec.y0)
    if spec.kind == "incomplete":
        return geo.incomplete_example(spec.m)
    if spec.kind == "mww":
        return geo.mww_example()
    return geo.affine(spec.P, spec.Q)


def scenario_data(config: ScenarioConfig) -> StationaryData:
    """The stationary data a scenario works on: the config's, else the scenario default."""
    if config.data is not None:
        return build_data(config.data)
    entry = SCENARIOS.get(config.name)
    if entry is None:
        raise UnknownScenarioError(f"unknown scenario {config.name!r}; try one of {sorted(SCENARIOS)}")
    if entry.data is None:
        raise ConfigError(f"scenario {config.name!r} has no default stationary data; set data in the config")
    if isinstance(entry.data, StationaryDataSpec):
        return build_data(entry.data)
    return entry.data(config)


def _report(config: ScenarioConfig) -> Report:
    return Report(config.name, anchor=SCENARIOS[config.name].anchor)


def _grid(config: ScenarioConfig) -> GridSpec:
    return config.grid or SCENARIOS[config.name].grid


def _points(L: float, n: int):
    axis = geo.grid_axes(L, n)
    return [(float(u), float(v)) for u in axis for v in axis]


def _u_grid(L: float, n: int):
    axis = geo.grid_axes(L, n)
    U1, U2 = np.meshgrid(axis, axis, indexing="ij")
    return U1 + 1j * U2


def _within(value: float, threshold: float) -> bool:
    return bool(value < threshold)


# ---------------------------------------------------------------------------
# scenarios
# ---------------------------------------------------------------------------

_FLAT = StationaryDataSpec(a=0.5, b=1.5, beta="1+2*i")
_LIGHTLIKE = StationaryDataSpec(a=0.0, b=1.0, beta="z^2")
_OSCILLATING = StationaryDataSpec(a=1.0, b=1.0, beta="z")
_REFERENCE = StationaryDataSpec(a=0.0, b=2.0, beta="z")


@scenario("flat-plane", "constant beta: affine graph, W constant, K = 0", 5.0, 21,
          anchor="trichotomy: affine case", data=_FLAT)
def flat_plane(config: ScenarioConfig) -> Report:
    data = scenario_data(config)
    grid = _grid(config)
    report = _report(config)
    case = rep.classify(data).case
    report.add("classification", "constant beta gives an affine plane", case.value,
               BernsteinCase.CASE_I.value, case is BernsteinCase.CASE_I)
    _, _, W = rep.w_grid(data, grid.L, grid.n)
    spread = float(np.max(W) - np.min(W))
    tol = config.tolerance("w-constant", 1e-12)
    report.add("w-constant", "W is constant on an affine plane", spread, tol, _within(spread, tol))
    residual = geo.max_residual(rep.graph_surface(data), _points(1.0, 5), config.fd_step)
    tol = config.tolerance("stationarity", 1e-10)
    report.add("stationarity", "affine graphs solve the stationarity system", residual, tol,
               _within(residual, tol))
    if data.m == 2:
        _, K, Kperp = curv.curvature_fields(data, _u_grid(grid.L, grid.n))
        k_max = float(max(np.max(np.abs(K)), np.max(np.abs(Kperp))))
        tol = config.tolerance("flatness", 1e-10)
        report.add("flatness", "affine planes are flat", k_max, tol, _within(k_max, tol))
        total = curv.total_curvature(data, config.param("R", 32.0))
        tol = config.tolerance("total-curvature", 1e-8)
        report.add("total-curvature", "flat surfaces have zero total curvature", total, tol,
                   _within(total, tol))
    return report


def _harmonic_expressions(rng, count: int):
    exprs = []
    for _ in range(count):
        k = int(rng.integers(2, 4))
        c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        exprs.append(f"({c.real!r} + {c.imag!r}*i)*(x1 + i*x2)^{k}")
    return exprs


def _identity_defect(f: GraphSurface, L: float, n: int) -> float:
    axis = geo.grid_axes(L, n)
    X1, X2 = np.meshgrid(axis, axis, indexing="ij")
    fields = geo.metric_fields(f, X1, X2)
    return float(max(
        np.max(np.abs(fields["g11"] - 1)), np.max(np.abs(fields["g22"] - 1)),
        np.max(np.abs(fields["g12"])),
    ))


@scenario("lightlike-graph", "f = h y0 with y0 lightlike projects isometrically onto the plane", 3.0, 21,
          anchor="lightlike-direction graphs are isometric to the plane", data=_LIGHTLIKE)
def lightlike_graph(config: ScenarioConfig) -> Report:
    spec = config.graph or GraphSpec(kind="lightlike")
    f = build_graph(spec)
    grid = _grid(config)
    report = _report(config)
    defect = _identity_defect(f, grid.L, grid.n)
    tol = config.tolerance("metric-identity", 1e-12)
    report.add("metric-identity", "lightlike-direction graphs have g = identity", defect, tol,
               _within(defect, tol))
    axis = geo.grid_axes(grid.L, grid.n)
    X1, X2 = np.meshgrid(axis, axis, indexing="ij")
    W = geo.metric_fields(f, X1, X2)["W"]
    w_dev = float(np.max(np.abs(W - 1)))
    report.add("w-one", "W = 1 for lightlike-direction graphs", w_dev, tol, _within(w_dev, tol))
    report.info("projection", "projection onto the base plane",
                geo.projection_character(float(np.mean(W))).value)
    residual = geo.max_residual(f, _points(grid.L, grid.n), config.fd_step)
    tol = config.tolerance("stationarity", 1e-8)
    report.add("stationarity", "harmonic h gives a stationary graph", residual, tol,
               _within(residual, tol))
    rng = np.random.default_rng(config.seed)
    y0 = spec.y0 if spec.kind == "lightlike" else [1.0, 1.0]
    defects = [_identity_defect(geo.lightlike(h, y0), grid.L, grid.n) for h in _harmonic_expressions(rng, 3)]
    tol = config.tolerance("metric-identity", 1e-12)
    report.add("random-harmonic", "g = identity for any h along a lightlike direction",
               max(defects), tol, _within(max(defects), tol))
    return report


@scenario("incomplete-graph", "entire spacelike graph carrying a curve of finite length", 10.0, 41,
          anchor="entire spacelike graphs need not be complete")
def incomplete_graph(config: ScenarioConfig) -> Report:
    spec = config.graph or GraphSpec(kind="incomplete", m=1)
    f = build_graph(spec)
    grid = _grid(config)
    report = _report(config)
    _, fraction = geo.spacelike_region(f, grid.L, grid.n)
    report.add("spacelike", "det g > 0 everywhere", fraction, 1.0, fraction == 1.0)
    T = config.param("T", Config.TAIL_T)
    path = geo.line_path()
    length = geo.curve_length(f, path, -math.inf, math.inf, T=T)
    target = config.param("length", 2.8042)
    tol = config.tolerance("curve-length", 1e-3)
    error = abs(length.value - target)
    report.add("curve-length", "the curve t -> (t, 0) has finite length", length.value,
               {"target": target, "tol": tol}, _within(error, tol))
    tail_tol = config.tolerance("tail-bound", 2e-4 * (1 + 1e-3))
    tail = max(length.tail_lower, length.tail_upper)
    report.add("tail-bound", "power decay beyond +-T bounds the remaining length",
               {"lower": length.tail_lower, "upper": length.tail_upper}, tail_tol,
               bool(tail <= tail_tol))
    euclidean = geo.euclidean_length(path, -T, T)
    report.add("euclidean-length", "the projected curve has length 2T", euclidean, 2 * T,
               abs(euclidean - 2 * T) <= 1e-9 * T, anchor=PLUMBING)
    return report


@scenario("mww-audit", "audit of the cited entire graph with bounded W (informational)", 3.0, 61,
          anchor="bounded-W entire graph (audited)")
def mww_audit(config: ScenarioConfig) -> Report:
    f = build_graph(config.graph or GraphSpec(kind="mww"))
    grid = _grid(config)
    report = _report(config)
    mask, fraction = geo.spacelike_region(f, grid.L, grid.n)
    axis = geo.grid_axes(grid.L, grid.n)
    X2 = np.broadcast_to(axis[None, :], mask.shape)
    strip = float(np.max(np.abs(X2[mask]))) if np.any(mask) else 0.0
    report.info("spacelike-fraction", PLUMBING, fraction)
    report.info("spacelike-strip", "g22 = cos(sqrt(2) x2) changes sign at |x2| = pi / (2 sqrt 2)",
                {"measured_halfwidth": strip, "predicted_halfwidth": math.pi / (2 * math.sqrt(2))})

    def residual_or_none(x):
        try:
            return float(np.max(np.abs(geo.stationarity_residual(f, x, config.fd_step))))
        except NotSpacelikeError:
            return None

    residuals = [r for r in pool.map_ordered(residual_or_none, _points(grid.L, grid.n)) if r is not None]
    report.info("residual", "stationarity residual at spacelike samples",
                {"max": max(residuals) if residuals else None, "samples": len(residuals)})
    return report


@scenario("t1-case-ii", "c = -i: lightlike-direction graph, W = 1, flat", 5.0, 41,
          anchor="trichotomy: lightlike case", data=_LIGHTLIKE)
def case_ii(config: ScenarioConfig) -> Report:
    data = scenario_data(config)
    grid = _grid(config)
    report = _report(config)
    classification = rep.classify(data)
    report.add("classification", "c = -i gives f = h y0 + y1", classification.to_dict(),
               BernsteinCase.CASE_II.value, classification.case is BernsteinCase.CASE_II)
    Z = _u_grid(grid.L, grid.n)
    w_dev = float(np.max(np.abs(np.asarray(rep.w_of(data, Z)) - 1)))
    tol = config.tolerance("w-one", 1e-12)
    report.add("w-one", "W = 1 in the lightlike case", w_dev, tol, _within(w_dev, tol))
    if data.m == 2:
        _, K, Kperp = curv.curvature_fields(data, Z)
        k_max = float(max(np.max(np.abs(K)), np.max(np.abs(Kperp))))
        tol = config.tolerance("flatness", 1e-10)
        report.add("flatness", "constant W forces flatness", k_max, tol, _within(k_max, tol))
    verdict = rep.classify_area_increasing(data)
    report.add("area-increasing", "W <= 1 is possible only along a lightlike direction",
               verdict.to_dict(), AreaIncreasingCase.LIGHTLIKE.value,
               verdict.case is AreaIncreasingCase.LIGHTLIKE and verdict.w_le_one_possible)
    return report


@scenario("t1-case-iii", "W oscillates over [r1, r2] with r1 r2 = 1", 20.0, 401,
          anchor="trichotomy: oscillating case", data=_OSCILLATING)
def case_iii(config: ScenarioConfig) -> Report:
    data = scenario_data(config)
    grid = _grid(config)
    report = _report(config)
    classification = rep.classify(data)
    report.add("classification", "non-constant beta with c != -i", classification.to_dict(),
               BernsteinCase.CASE_III.value, classification.case is BernsteinCase.CASE_III)
    if classification.trichotomy:
        product_error = abs(classification.product - 1.0)
        report.add("closed-form-product", "r1 r2 = 1", product_error, 1e-12, product_error <= 1e-12)
    stats = rep.w_statistics(data, grid.L, grid.n)
    tol = config.tolerance("empirical-product", 1e-3)
    expected = classification.product
    report.add("empirical-product", "inf W * sup W on a large grid", stats,
               {"expected": expected, "tol": tol}, abs(stats["product"] - expected) <= tol)
    Z = _u_grid(2.0, 21)
    formula_gap = float(np.max(np.abs(rep.w_of(data, Z) - rep.w_closed_form(data, Z))))
    report.add("w-formula", "component and closed-form expressions of W agree", formula_gap, 1e-10,
               _within(formula_gap, 1e-10), anchor="W formula")
    delta = config.param("delta", 0.05)
    required = int(config.param("N", 10))
    att = rep.attainment(data, grid.L, grid.n, delta=delta, N=required)
    report.add("attainment", "every value in [r1 + delta, r2 - delta] is attained repeatedly",
               {"min_count": att["min_count"], "levels": len(att["levels"])}, required, att["passed"])
    ber1 = rep.ber1_check(data, 5.0, 41)
    report.add("ber1", "W > 1 and W < 1 coexist only in the oscillating case", ber1, True,
               ber1["consistent"], anchor="W on both sides of 1")
    return report


@scenario("ber1-check", "samples on both sides of W = 1 appear exactly for CaseIII", 5.0, 41,
          anchor="W on both sides of 1", data=_OSCILLATING)
def ber1_check(config: ScenarioConfig) -> Report:
    grid = _grid(config)
    report = _report(config)
    specs = {
        "case-i": _FLAT,
        "case-ii": _LIGHTLIKE,
        "case-iii": _OSCILLATING,
    }
    if config.data is not None:
        specs["configured"] = config.data
    for label, spec in specs.items():
        result = rep.ber1_check(build_data(spec), grid.L, grid.n)
        report.add(f"ber1-{label}", "coexistence of W > 1 and W < 1 matches the classification",
                   result, True, result["consistent"])
    return report


def _ber3_data(config: ScenarioConfig) -> StationaryData:
    return rep.construct_ber3(config.param("C", 4.0), config.param("eps", 0.1), int(config.param("m", 3)))


@scenario("ber3", "non-flat data with inf W * sup W = C and sup W - inf W < eps", 20.0, 401,
          anchor="prescribed inf W * sup W", data=_ber3_data)
def ber3(config: ScenarioConfig) -> Report:
    C = config.param("C", 4.0)
    eps = config.param("eps", 0.1)
    data = _ber3_data(config)
    grid = _grid(config)
    report = _report(config)
    r1, r2 = rep.w_range(data)
    report.add("closed-form", "r1 r2 = C", {"r1": r1, "r2": r2, "product": r1 * r2}, C,
               abs(r1 * r2 - C) <= 1e-12 * C)
    stats = rep.w_statistics(data, grid.L, grid.n)
    tol = config.tolerance("product", 1e-3 * C)
    report.add("product", "measured inf W * sup W", stats["product"], {"expected": C, "tol": tol},
               abs(stats["product"] - C) <= tol)
    report.add("spread", "0 < sup W - inf W < eps", stats["spread"], eps,
               bool(0 < stats["spread"] < eps))
    report.info("data", PLUMBING, data.to_dict())
    report.info("w-range", "closed-form infimum and supremum of W", {"r1": r1, "r2": r2})
    return report


@scenario("ftc-divergence", "total curvature grows without bound for non-constant beta", 1.0, 5,
          anchor="infinite total curvature", data=_REFERENCE)
def ftc_divergence(config: ScenarioConfig) -> Report:
    data = scenario_data(config)
    radii = config.radii or [2.0, 4.0, 8.0, 16.0, 32.0]
    tol = config.tolerance("quadrature", Config.TOTAL_CURVATURE_TOL)
    report = _report(config)
    table = curv.total_curvature_table(data, radii, tol)
    totals = [row["total"] for row in table]
    increasing = all(b > a for a, b in zip(totals, totals[1:]))
    report.add("increasing", "partial total curvature increases with R", table, None, increasing)
    ratio = totals[-1] / totals[0] if totals[0] > 0 else math.inf
    min_ratio = config.param("ratio", 10.0)
    report.add("ratio", "growth from the smallest to the largest square", ratio, min_ratio,
               bool(ratio > min_ratio))
    R_max = max(radii)
    # beta = sinh z oscillates too fast for the cubature beyond R = 4
    for label, beta, limit in (("z2", "z^2", R_max), ("sinh", "sinh(z)", config.param("sinh_max_R", 4.0))):
        reach = [R for R in radii if R <= limit]
        if len(reach) < 2:
            continue
        other = build_data(StationaryDataSpec(a=data.a, b=data.b, consts=list(data.consts),
                                              beta=beta, m=data.m))
        rows = curv.total_curvature_table(other, reach, tol)
        totals = [row["total"] for row in rows]
        report.add(f"increasing-{label}", f"partial total curvature increases with R for beta = {beta}",
                   rows, None, all(b > a for a, b in zip(totals, totals[1:])))
    for label, spec in (("case-i", _FLAT), ("case-ii", _LIGHTLIKE)):
        total = curv.total_curvature(build_data(spec), R_max, tol)
        report.add(f"flat-{label}", "flat cases have zero total curvature", total, 1e-8, total < 1e-8)
    report.info("density-exponent", "fourth-power denominator (implemented) vs squared (displayed)",
                {"density": curv.abs_k_density(data, 0.0), "reference": curv.density_reference(data, 0.0)})
    normal = curv.total_curvature_table(data, radii, tol, normal=True)
    report.info("normal-curvature", "partial integrals of |Kperp| e^(2 omega)", normal)
    return report


@scenario("lewy-conformal", "Lewy map: closed forms, J_L > 1, isothermal eta chart", 1.0, 5,
          anchor="Lewy map and isothermal parameters", data=_OSCILLATING)
def lewy_conformal(config: ScenarioConfig) -> Report:
    grid = _grid(config)
    report = _report(config)
    canonical = scenario_data(config)
    surfaces = {
        "zero": geo.constant([0.0, 0.0]),
        "lightlike": geo.lightlike("x1^2 - x2^2", [1.0, 1.0]),
        "canonical": rep.graph_surface(canonical),
    }
    fd = config.param("conformal_fd_step", 1e-4)
    for label, f in surfaces.items():
        closed = lewy.closedness_report(f, grid.L, grid.n, config.fd_step)
        tol = config.tolerance("closedness", 1e-6)
        report.add(f"closedness-{label}", "the stationarity 1-forms are closed",
                   closed["max_residual"], tol, _within(closed["max_residual"], tol))
        jac = lewy.jacobian_report(f, grid.L, grid.n)
        report.add(f"jl-{label}", "J_L is length increasing", jac, 1.0, jac["min_eigenvalue"] > 1.0)
        conf = lewy.conformal_check(f, grid.L, grid.n, fd_step=fd)
        tol = config.tolerance("conformal", 1e-4)
        worst = max(conf["anisotropy"], conf["off_diagonal"], conf["conf_deviation"])
        report.add(f"conformal-{label}", "(eta_1, eta_2) are isothermal", conf, tol, _within(worst, tol))
        holo_check = lewy.beta_holomorphy_check(f, grid.L, grid.n, fd_step=fd)
        report.add(f"holomorphy-{label}", "d x / d zeta is holomorphic and orientation is positive",
                   holo_check, tol,
                   _within(holo_check["cr_residual"], tol) and holo_check["orientation_positive"])
        path_tol = config.tolerance("path-independence", 1e-8)
        gap = lewy.path_independence(f, (grid.L, grid.L), tol=1e-10)
        report.add(f"path-{label}", "xi does not depend on the L-shaped path", gap, path_tol,
                   _within(gap, path_tol))
    Z = _u_grid(grid.L, grid.n)
    margin = float(np.min(2 * rep.hermitian_norm(canonical, Z)) - rep.completeness_bound(canonical))
    report.add("completeness-bound", "2 <alpha, conj(alpha)> stays above its lower bound", margin,
               -1e-12, margin >= -1e-12, anchor="completeness lower bound")
    return report


_CURVATURE_SURFACES = (
    _REFERENCE,
    _OSCILLATING,
    StationaryDataSpec(a=0.5, b=1.5, beta="0.5*z^2"),
)


@scenario("curvature-point", "closed-form curvature against a finite-difference Laplacian", 1.0, 5,
          anchor="Gauss and normal curvature formula", data=_REFERENCE)
def curvature_point(config: ScenarioConfig) -> Report:
    data = scenario_data(config)
    report = _report(config)
    z0 = complex(config.param("u1", 0.0), config.param("u2", 0.0))
    sample = curv.curvatures(data, z0)
    report.info("sample", PLUMBING, sample.to_dict())
    if config.data is None and z0 == 0:
        expected = {"e2omega": 4.0, "K": 0.1875, "Kperp": 0.0, "density": 0.75}
        for key, value in expected.items():
            measured = getattr(sample, key)
            report.add(f"point-{key}", "values at z = 0 for a = 0, b = 2, beta = z", measured,
                       value, abs(measured - value) <= 1e-10)
    K_fd, Kperp_fd = curv.curvature_fd_oracle(data, z0, config.fd_step)
    tol = config.tolerance("oracle", 1e-4)
    report.add("oracle-point", "finite-difference Laplacian agrees", {"K": K_fd, "Kperp": Kperp_fd},
               tol, abs(K_fd - sample.K) <= tol * (1 + abs(sample.K)))
    grid = _grid(config)
    for i, spec in enumerate(_CURVATURE_SURFACES):
        surface = build_data(spec)
        worst, density_gap = 0.0, 0.0
        for x in _points(grid.L, grid.n):
            z = complex(*x)
            closed = curv.curvatures(surface, z)
            K_fd, Kperp_fd = curv.curvature_fd_oracle(surface, z, config.fd_step)
            scale = 1 + abs(closed.K) + abs(closed.Kperp)
            worst = max(worst, abs(K_fd - closed.K) / scale, abs(Kperp_fd - closed.Kperp) / scale)
            gap = abs(curv.abs_k_density(surface, z) - closed.density) / (1 + closed.density)
            density_gap = max(density_gap, gap)
        report.add(f"oracle-{i}", "closed form and Laplacian oracle agree on the grid", worst, tol,
                   _within(worst, tol))
        report.add(f"density-{i}", "|K| e^(2 omega) matches the closed-form density", density_gap,
                   1e-10, _within(density_gap, 1e-10))
    return report


_STATIONARY_SURFACES = (
    _REFERENCE,
    _OSCILLATING,
    StationaryDataSpec(a=0.5, b=1.5, beta="0.5*z^2"),
    StationaryDataSpec(a=-1.0, b=1.2, beta="z"),
    StationaryDataSpec(a=0.0, b=1.5, consts=[0.5], beta="z", m=3),
)


@scenario("stationarity", "graphs recovered from holomorphic data solve the stationarity system", 1.0, 5,
          anchor="holomorphic representation", data=_REFERENCE)
def stationarity(config: ScenarioConfig) -> Report:
    grid = _grid(config)
    report = _report(config)
    specs = [config.data] if config.data is not None else list(_STATIONARY_SURFACES)
    points = _points(grid.L, grid.n)
    h = config.fd_step
    for i, spec in enumerate(specs):
        data = build_data(spec)
        f = rep.graph_surface(data)
        residual = geo.max_residual(f, points, h)
        tol = config.tolerance("stationarity", 1e-6)
        report.add(f"residual-{i}", "recovered graphs are stationary", residual, tol,
                   _within(residual, tol))
        order = math.log2(geo.residual_order(f, points, h))
        report.add(f"order-{i}", "residual decays at second order", order, [1.5, 2.5],
                   bool(1.5 <= order <= 2.5))
        gap = 0.0
        for x in points:
            W_graph = geo.metric_at(f, x).W
            gap = max(gap, abs(rep.w_of(data, complex(rep.chart(data, *x))) - W_graph))
        report.add(f"w-consistency-{i}", "W from the holomorphic data equals sqrt det g of the graph",
                   gap, 1e-8, _within(gap, 1e-8))
    return report


@scenario("isotropy", "<alpha, alpha> = 0 for random holomorphic data", 0.75, 2,
          anchor="isotropy of alpha")
def isotropy(config: ScenarioConfig) -> Report:
    rng = np.random.default_rng(config.seed)
    report = _report(config)
    radius = _grid(config).L
    betas = ["z", "z^2", "sinh(z)", "(1+i)*z^3"]
    worst_isotropy, worst_margin = 0.0, math.inf
    for _ in range(int(config.param("surfaces", 10))):
        a = float(rng.uniform(-2, 2))
        b = float(rng.uniform(1e-3, 2))
        data = rep.make_canonical(a, b, (), betas[int(rng.integers(len(betas)))], 2)
        Z = rng.uniform(-radius, radius, 100) + 1j * rng.uniform(-radius, radius, 100)
        worst_isotropy = max(worst_isotropy, float(np.max(np.abs(rep.isotropy_defect(data, Z)))))
        margin = float(np.min(2 * rep.hermitian_norm(data, Z)) - rep.completeness_bound(data))
        worst_margin = min(worst_margin, margin)
    tol = config.tolerance("isotropy", 1e-12)
    report.add("isotropy", "alpha is isotropic", worst_isotropy, tol, _within(worst_isotropy, tol))
    report.add("completeness-bound", "conformal factor stays above its lower bound", worst_margin,
               -1e-12, worst_margin >= -1e-12, anchor="completeness lower bound")
    return report


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def run_scenario(config: ScenarioConfig) -> Report:
    entry = SCENARIOS.get(config.name)
    if entry is None:
        raise UnknownScenarioError(f"unknown scenario {config.name!r}; try one of {sorted(SCENARIOS)}")
    logger.info("running scenario %s", config.name)
    report = entry.run(config)
    report.environment = {
        "grid": _grid(config).model_dump(),
        "fd_step": config.fd_step,
        "tolerances": dict(config.tolerances),
        "params": dict(config.params),
        "seed": config.seed,
        "threads": pool.threads,
    }
    for check in report.failures:
        logger.warning("%s: check %s failed (measured %r, threshold %r)", config.name,
                       check.check_id, check.measured, check.threshold)
    logger.info("scenario %s %s", config.name, "passed" if report.passed else "FAILED")
    return report
