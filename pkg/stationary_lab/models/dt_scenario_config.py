from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class GridSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    L: float = Field(default=1.0, gt=0)
    n: int = Field(default=5, ge=2)


class OutputSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["csv", "obj", "json"]
    path: str
    # 0-based indices into the 2+m ambient coordinates, OBJ only
    coords: List[int] = Field(default_factory=lambda: [0, 1, 2])

    @field_validator("coords")
    @classmethod
    def _three_distinct(cls, value):
        if len(value) != 3 or len(set(value)) != 3 or min(value) < 0:
            raise ValueError("coords must be three distinct non-negative indices")
        return value


class StationaryDataSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    a: float = 0.0
    b: float = 1.0
    consts: List[float] = Field(default_factory=list)
    beta: str = "z"
    m: int = Field(default=2, ge=2)
    family: Literal["canonical", "lightlike"] = "canonical"
    v: Optional[List[float]] = None

    @model_validator(mode="after")
    def _consts_match_m(self):
        if self.family == "canonical" and len(self.consts) != self.m - 2:
            raise ValueError(f"consts needs m - 2 = {self.m - 2} entries, got {len(self.consts)}")
        return self


class GraphSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["expressions", "lightlike", "incomplete", "mww", "affine"] = "expressions"
    components: List[str] = Field(default_factory=list)
    h: str = "x1^2 - x2^2"
    y0: List[float] = Field(default_factory=lambda: [1.0, 1.0])
    m: int = Field(default=1, ge=1)
    P: List[float] = Field(default_factory=list)
    Q: List[float] = Field(default_factory=list)


class ScenarioConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    data: Optional[StationaryDataSpec] = None
    graph: Optional[GraphSpec] = None
    grid: Optional[GridSpec] = None
    fd_step: float = Field(default=1e-3, gt=0)
    tolerances: Dict[str, float] = Field(default_factory=dict)
    params: Dict[str, float] = Field(default_factory=dict)
    radii: List[float] = Field(default_factory=list)
    outputs: List[OutputSpec] = Field(default_factory=list)
    seed: int = 0

    @field_validator("radii")
    @classmethod
    def _positive_radii(cls, value):
        if any(R <= 0 for R in value):
            raise ValueError("radii must be > 0")
        return value

    def tolerance(self, check_id: str, default: float) -> float:
        return float(self.tolerances.get(check_id, default))

    def param(self, key: str, default: float) -> float:
        return float(self.params.get(key, default))
