import json
import logging

from ..config import Config
from ..errors import ConfigError
from ..models.dt_scenario_config import ScenarioConfig
from ..repositories import SampleRepository
from ..services import export_service
from ..services.scenario_service import SCENARIOS, list_scenarios, run_scenario, scenario_data
from . import failure

logger = logging.getLogger(__name__)


def load_config(name, config_path=None, overrides=None):
    """Scenario file fields, then CLI overrides, validated as one ScenarioConfig."""
    payload = {}
    if config_path:
        try:
            with open(config_path, encoding="utf-8") as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {config_path}: {e}")
        if not isinstance(payload, dict):
            raise ConfigError(f"config {config_path} must hold a JSON object")
    if name:
        payload["name"] = name
    payload.setdefault("seed", Config.SEED)
    overrides = dict(overrides or {})
    grid = overrides.get("grid")
    if grid and "grid" not in payload and payload.get("name") in SCENARIOS:
        payload["grid"] = SCENARIOS[payload["name"]].grid.model_dump()
    for key, value in overrides.items():
        if value is None or (isinstance(value, dict) and not value):
            continue
        if isinstance(value, dict) and isinstance(payload.get(key), dict):
            payload[key] = {**payload[key], **value}
        else:
            payload[key] = value
    return ScenarioConfig.model_validate(payload)


def write_outputs(config, report, output_dir):
    """Write every requested output; returns the written paths."""
    written = []
    for output in config.outputs:
        path = SampleRepository.resolve(output_dir, config.name, output.path)
        if output.kind == "json":
            written.append(SampleRepository.write_json(report.to_dict(), path))
            continue
        data = scenario_data(config)
        grid = config.grid or SCENARIOS[config.name].grid
        if output.kind == "csv":
            df = export_service.sample_table(data, grid.L, grid.n)
            written.append(SampleRepository.write_csv(df, path))
        else:
            vertices, faces = export_service.mesh(data, grid.L, grid.n, output.coords)
            text = export_service.obj_text(vertices, faces, header=f"{config.name} coords={output.coords}")
            written.append(SampleRepository.write_obj(text, path))
    return written


def run(name, config_path=None, overrides=None, output_dir=None):
    """Run a catalog scenario; exit code 1 when any check fails"""
    try:
        config = load_config(name, config_path, overrides)
        report = run_scenario(config)
        written = write_outputs(config, report, output_dir or Config.OUTPUT_DIR)
        payload = report.to_dict()
        payload["outputs"] = written
        return payload, 0 if report.passed else 1
    except Exception as e:
        return failure(e)


def catalog():
    return {"ok": True, "scenarios": list_scenarios()}, 0
