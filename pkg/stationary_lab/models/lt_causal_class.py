from enum import Enum


class CausalClass(str, Enum):
    SPACELIKE = "Spacelike"
    TIMELIKE = "Timelike"
    LIGHTLIKE = "Lightlike"

    def to_dict(self):
        return {"causal_class": self.value}
