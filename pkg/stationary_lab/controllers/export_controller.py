from ..config import Config
from ..errors import ConfigError
from ..repositories import SampleRepository
from ..services import export_service
from . import failure
from .analysis_controller import load_data


def export(fields, kind, path, L, n, coords=(0, 1, 2), config_path=None, output_dir=None):
    """Write a CSV sample table or an OBJ mesh of the surface"""
    try:
        data = load_data(fields, config_path)
        path = SampleRepository.resolve(output_dir or Config.OUTPUT_DIR, "export", path)
        if kind == "csv":
            df = export_service.sample_table(data, L, n)
            SampleRepository.write_csv(df, path)
            return {"ok": True, "path": path, "rows": len(df)}, 0
        if kind == "obj":
            vertices, faces = export_service.mesh(data, L, n, tuple(coords))
            SampleRepository.write_obj(export_service.obj_text(vertices, faces), path)
            return {"ok": True, "path": path, "vertices": len(vertices), "faces": len(faces)}, 0
        raise ConfigError(f"unknown export kind {kind!r}")
    except Exception as e:
        return failure(e)
