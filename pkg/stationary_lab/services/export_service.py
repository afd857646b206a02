# stationary_lab/services/export_service.py
"""Sample tables, meshes and report payloads, built in memory; writing is the repository's job."""

import logging

import numpy as np
import pandas as pd

from ..errors import CodimensionError, DimensionError, LabError
from ..models.dt_stationary_data import StationaryData
from . import curvature_service as curv
from . import graph_geometry_service as geo
from . import representation_service as rep

logger = logging.getLogger(__name__)


def _parameter_grid(L: float, n: int):
    axis = geo.grid_axes(L, n)
    U1, U2 = np.meshgrid(axis, axis, indexing="ij")
    return U1 + 1j * U2


def sample_table(data: StationaryData, L: float, n: int) -> pd.DataFrame:
    """One row per parameter sample u1 + i u2 on [-L, L]^2, row-major in u1.

    Columns: u1, u2, x1, x2, f1..fm, W, e2omega, K, Kperp. Curvature columns
    are NaN when m != 2.
    """
    Z = _parameter_grid(L, n)
    X = rep.synthesize(data, Z)
    columns = {"u1": Z.real.ravel(), "u2": Z.imag.ravel(), "x1": X[0].ravel(), "x2": X[1].ravel()}
    for k in range(data.m):
        columns[f"f{k + 1}"] = X[2 + k].ravel()
    columns["W"] = np.asarray(rep.w_closed_form(data, Z), dtype=float).ravel()
    nan = np.full(Z.size, np.nan)
    e2omega, K, Kperp = nan, nan, nan
    if data.m == 2:
        try:
            e2omega, K, Kperp = (np.asarray(v, dtype=float).ravel() for v in curv.curvature_fields(data, Z))
        except LabError as e:
            logger.warning("curvature columns left empty: %s", e)
    columns.update({"e2omega": e2omega, "K": K, "Kperp": Kperp})
    return pd.DataFrame(columns)


def mesh(data: StationaryData, L: float, n: int, coords=(0, 1, 2)):
    """Vertices (n*n, 3) and 1-based counter-clockwise triangles for an OBJ file.

    Vertex i*n + j sits at parameter (u1_i, u2_j); each cell (i, j) gives the
    faces (v00, v10, v11) and (v00, v11, v01).
    """
    if len(coords) != 3 or len(set(coords)) != 3:
        raise DimensionError("dimension: three distinct coordinates are needed for a mesh")
    if max(coords) >= data.n or min(coords) < 0:
        raise CodimensionError(f"codimension: coordinates {list(coords)} exceed 0..{data.n - 1}")
    X = rep.synthesize(data, _parameter_grid(L, n))
    vertices = np.stack([X[k].ravel() for k in coords], axis=1)
    faces = []
    for i in range(n - 1):
        for j in range(n - 1):
            v00 = i * n + j + 1
            v10 = (i + 1) * n + j + 1
            v01 = i * n + j + 2
            v11 = (i + 1) * n + j + 2
            faces.append((v00, v10, v11))
            faces.append((v00, v11, v01))
    return vertices, faces


def obj_text(vertices, faces, header: str = None) -> str:
    lines = [f"# {header}"] if header else []
    lines += [f"v {x!r} {y!r} {z!r}" for x, y, z in vertices.tolist()]
    lines += [f"f {a} {b} {c}" for a, b, c in faces]
    return "\n".join(lines) + "\n"
