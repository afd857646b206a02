"""Expression tree of the holomorphic mini-language.

Nodes are immutable; `offset` is the position in the source text and is ignored
by equality so that reprinted and reparsed trees compare equal.
"""
import math
from dataclasses import dataclass, field
from typing import Tuple

FUNCTIONS = ("exp", "sin", "cos", "sinh", "cosh")

# binding strength, used by the printer
PREC_SUM = 1
PREC_PRODUCT = 2
PREC_POWER = 3
PREC_UNARY = 4
PREC_ATOM = 5


@dataclass(frozen=True)
class Node:
    offset: int = field(default=0, compare=False, repr=False, kw_only=True)

    precedence = PREC_ATOM

    @property
    def children(self) -> Tuple["Node", ...]:
        return ()


@dataclass(frozen=True)
class Num(Node):
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class Var(Node):
    name: str


@dataclass(frozen=True)
class Neg(Node):
    operand: Node
    precedence = PREC_UNARY

    @property
    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class Binary(Node):
    left: Node
    right: Node
    symbol = "?"

    @property
    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Add(Binary):
    precedence = PREC_SUM
    symbol = "+"


@dataclass(frozen=True)
class Sub(Binary):
    precedence = PREC_SUM
    symbol = "-"


@dataclass(frozen=True)
class Mul(Binary):
    precedence = PREC_PRODUCT
    symbol = "*"


@dataclass(frozen=True)
class Div(Binary):
    precedence = PREC_PRODUCT
    symbol = "/"


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int
    precedence = PREC_POWER

    @property
    def children(self):
        return (self.base,)


@dataclass(frozen=True)
class Call(Node):
    func: str
    arg: Node

    @property
    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class HoloExpr:
    """Parsed expression plus the text it came from."""

    ast: Node
    source: str = ""
    variables: Tuple[str, ...] = ("z",)

    def __repr__(self):
        return f"<HoloExpr {self.source!r}>"

    def to_dict(self):
        return {"source": self.source, "variables": list(self.variables)}


@dataclass(frozen=True)
class ComplexValue:
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            # local import keeps models free of service imports at module load
            from ..errors import EvaluationError
            raise EvaluationError(f"evaluation: non-finite complex value ({self.re}, {self.im})")

    @classmethod
    def of(cls, value) -> "ComplexValue":
        if isinstance(value, ComplexValue):
            return value
        value = complex(value)
        return cls(value.real, value.imag)

    def __complex__(self):
        return complex(self.re, self.im)

    def to_dict(self):
        return {"re": self.re, "im": self.im}
