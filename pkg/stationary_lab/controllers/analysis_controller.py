import json
import logging

import numpy as np

from ..config import Config
from ..errors import ConfigError
from ..models.dt_scenario_config import GraphSpec, StationaryDataSpec
from ..services import curvature_service as curv
from ..services import graph_geometry_service as geo
from ..services import representation_service as rep
from ..services.scenario_service import build_data, build_graph
from . import failure

logger = logging.getLogger(__name__)


def load_data(fields, config_path=None):
    """StationaryData from a JSON file ({a, b, consts, beta, m}) overridden by flags."""
    payload = {}
    if config_path:
        try:
            with open(config_path, encoding="utf-8") as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read data file {config_path}: {e}")
        # scenario files nest the data under "data"
        payload = payload.get("data", payload) if isinstance(payload, dict) else payload
        if not isinstance(payload, dict):
            raise ConfigError(f"data file {config_path} must hold a JSON object")
    payload.update({k: v for k, v in fields.items() if v is not None})
    return build_data(StationaryDataSpec.model_validate(payload))


def classify(fields, config_path=None):
    try:
        data = load_data(fields, config_path)
        result = rep.classify(data).to_dict()
        verdict = rep.classify_area_increasing(data)
        return {
            "ok": True,
            "data": data.to_dict(),
            "classification": result,
            "area_increasing": verdict.to_dict(),
        }, 0
    except Exception as e:
        return failure(e)


def w_stats(fields, L, n, config_path=None):
    try:
        data = load_data(fields, config_path)
        stats = rep.w_statistics(data, L, n)
        r1, r2 = rep.w_range(data)
        return {"ok": True, "data": data.to_dict(), "stats": stats, "closed_form": {"r1": r1, "r2": r2}}, 0
    except Exception as e:
        return failure(e)


def verify(fields, L, n, h=None, components=None, config_path=None):
    """Stationarity residual, convergence ratio and W over a grid of [-L, L]^2"""
    try:
        if components:
            f = build_graph(GraphSpec(kind="expressions", components=list(components)))
            source = {"components": list(components)}
        else:
            data = load_data(fields, config_path)
            f = rep.graph_surface(data)
            source = data.to_dict()
        h = Config.FD_STEP if h is None else h
        _, fraction = geo.spacelike_region(f, L, n)
        axis = geo.grid_axes(L, n)
        points = [(float(u), float(v)) for u in axis for v in axis]
        payload = {"ok": True, "source": source, "spacelike_fraction": fraction, "fd_step": h}
        if fraction < 1.0:
            payload["ok"] = False
            payload["error"] = "not spacelike on the whole grid"
            return payload, 3
        payload["max_residual"] = geo.max_residual(f, points, h)
        payload["residual_ratio"] = geo.residual_order(f, points, h)
        X1, X2 = np.meshgrid(axis, axis, indexing="ij")
        W = geo.metric_fields(f, X1, X2)["W"]
        payload["W"] = {"min": float(np.min(W)), "max": float(np.max(W))}
        return payload, 0
    except Exception as e:
        return failure(e)


def curvature(fields, u1, u2, h=None, config_path=None):
    try:
        data = load_data(fields, config_path)
        z = complex(u1, u2)
        sample = curv.curvatures(data, z)
        K_fd, Kperp_fd = curv.curvature_fd_oracle(data, z, Config.FD_STEP if h is None else h)
        return {
            "ok": True,
            "data": data.to_dict(),
            "z": {"u1": u1, "u2": u2},
            "sample": sample.to_dict(),
            "oracle": {"K": K_fd, "Kperp": Kperp_fd},
            "density_reference": curv.density_reference(data, z),
        }, 0
    except Exception as e:
        return failure(e)


def total_curvature(fields, radii, tol=None, normal=False, config_path=None):
    try:
        data = load_data(fields, config_path)
        if not radii:
            raise ConfigError("at least one radius is required")
        table = curv.total_curvature_table(data, radii, tol, normal=normal)
        return {"ok": True, "data": data.to_dict(), "normal": normal, "table": table}, 0
    except Exception as e:
        return failure(e)
