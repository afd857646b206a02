import json
import math

import pytest

from stationary_lab.errors import CodimensionError, DimensionError
from stationary_lab.repositories import SampleRepository
from stationary_lab.services import export_service
from stationary_lab.services import representation_service as rep


def test_sample_table_layout(data_case_iii):
    df = export_service.sample_table(data_case_iii, 1.0, 3)
    assert list(df.columns) == ["u1", "u2", "x1", "x2", "f1", "f2", "W", "e2omega", "K", "Kperp"]
    assert len(df) == 9
    assert list(df["u1"][:3]) == [-1.0, -1.0, -1.0]
    assert list(df["u2"][:3]) == [-1.0, 0.0, 1.0]
    r1, r2 = rep.w_range(data_case_iii)
    assert df["W"].between(r1 - 1e-12, r2 + 1e-12).all()


def test_sample_table_without_curvature():
    data = rep.make_canonical(0.0, 1.5, (0.25,), "z", 3)
    df = export_service.sample_table(data, 1.0, 2)
    assert "f3" in df.columns
    assert df["K"].isna().all()


def test_csv_file(tmp_path, data_case_iii):
    path = SampleRepository.write_csv(export_service.sample_table(data_case_iii, 1.0, 3), str(tmp_path / "s.csv"))
    lines = (tmp_path / "s.csv").read_text().splitlines()
    assert path.endswith("s.csv")
    assert lines[0] == "u1,u2,x1,x2,f1,f2,W,e2omega,K,Kperp"
    assert len(lines) == 10
    # full precision survives the text round
    x1 = float(lines[1].split(",")[2])
    assert x1 == export_service.sample_table(data_case_iii, 1.0, 3)["x1"][0]


def test_mesh_counts(data_b2):
    vertices, faces = export_service.mesh(data_b2, 1.0, 2)
    assert vertices.shape == (4, 3)
    assert faces == [(1, 3, 4), (1, 4, 2)]
    text = export_service.obj_text(vertices, faces, header="b2")
    lines = text.splitlines()
    assert lines[0] == "# b2"
    assert sum(line.startswith("v ") for line in lines) == 4
    assert sum(line.startswith("f ") for line in lines) == 2


def test_mesh_faces_cover_grid(data_b2):
    vertices, faces = export_service.mesh(data_b2, 1.0, 4)
    assert len(vertices) == 16
    assert len(faces) == 2 * 9
    assert max(max(face) for face in faces) == 16


def test_mesh_coordinates(data_b2):
    with pytest.raises(DimensionError):
        export_service.mesh(data_b2, 1.0, 2, (0, 0, 1))
    with pytest.raises(CodimensionError):
        export_service.mesh(data_b2, 1.0, 2, (0, 1, 4))


def test_json_is_deterministic(tmp_path):
    payload = {"b": [1.0, 0.1 + 0.2], "a": complex(1, -2), "pi": math.pi}
    first = SampleRepository.write_json(payload, str(tmp_path / "one" / "r.json"))
    second = SampleRepository.write_json(payload, str(tmp_path / "two" / "r.json"))
    with open(first, "rb") as fh1, open(second, "rb") as fh2:
        assert fh1.read() == fh2.read()
    assert '"re": 1.0' in SampleRepository.dumps(payload)
    assert "0.30000000000000004" in SampleRepository.dumps(payload)


def test_resolve(tmp_path):
    assert SampleRepository.resolve(str(tmp_path), "ber3", "out.json") == str(tmp_path / "ber3" / "out.json")
    assert SampleRepository.resolve(str(tmp_path), "ber3", "/abs/out.json") == "/abs/out.json"


def test_json_floats_use_17_significant_digits():
    text = SampleRepository.dumps({"x": 0.1, "n": 2.0, "bad": float("nan")})
    assert '"x": 0.10000000000000001' in text
    assert '"n": 2.0' in text
    assert '"bad": NaN' in text
    assert json.loads(text)["x"] == 0.1
