from enum import Enum


class ProjectionCharacter(str, Enum):
    """How the projection of a graph onto its base plane treats area (W < 1, = 1, > 1)."""

    AREA_INCREASING = "area-increasing"
    AREA_PRESERVING = "area-preserving"
    AREA_DECREASING = "area-decreasing"

    def to_dict(self):
        return {"projection": self.value}
