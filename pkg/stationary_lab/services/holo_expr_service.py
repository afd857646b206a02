# stationary_lab/services/holo_expr_service.py
"""Mini-language for entire functions of one complex variable.

Grammar (whitespace insensitive):
    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := unary ('^' integer)?
    unary  := '-'? atom
    atom   := number | 'i' | variable | func '(' expr ')' | '(' expr ')'
Note the unary minus binds tighter than '^', so "-z^2" is (-z)^2.
"""

import logging
import math
import re
from functools import singledispatch
from typing import Sequence, Union

import numpy as np

from ..errors import (
    EvaluationError,
    ExponentError,
    ExprSyntaxError,
    UnknownFunctionError,
)
from ..models.dt_holo_expr import (
    FUNCTIONS,
    PREC_ATOM,
    PREC_UNARY,
    Add,
    Binary,
    Call,
    ComplexValue,
    Div,
    HoloExpr,
    Mul,
    Neg,
    Node,
    Num,
    Pow,
    Sub,
    Var,
)
from .quadrature_service import adaptive_gauss_legendre

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)

_SAMPLE_POINTS = np.array([
    0.0, 0.5 + 0.25j, -0.75 + 0.5j, 1.1 - 0.9j, -1.3 - 0.4j, 0.2 + 1.7j, 2.3 + 0.1j, -0.6 - 2.1j,
])


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _tokenize(text: str):
    tokens = []
    pos = 0
    text_len = len(text)
    while pos < text_len:
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append((kind, match.group(kind), start))
        pos = match.end()
    tokens.append(("end", "", text_len))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def _advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _expect_op(self, symbol):
        kind, value, offset = self.current
        if kind != "op" or value != symbol:
            found = value or "end of input"
            raise ExprSyntaxError(f"expected {symbol!r} but found {found!r}", offset)
        return self._advance()

    def parse(self) -> Node:
        node = self.expr()
        kind, value, offset = self.current
        if kind != "end":
            raise ExprSyntaxError(f"unexpected token {value!r}", offset)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.current[0] == "op" and self.current[1] in "+-":
            _, symbol, offset = self._advance()
            right = self.term()
            node = (Add if symbol == "+" else Sub)(node, right, offset=offset)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.current[0] == "op" and self.current[1] in "*/":
            _, symbol, offset = self._advance()
            right = self.factor()
            node = (Mul if symbol == "*" else Div)(node, right, offset=offset)
        return node

    def factor(self) -> Node:
        node = self.unary()
        if self.current[0] == "op" and self.current[1] == "^":
            _, _, offset = self._advance()
            node = Pow(node, self._integer(), offset=offset)
        return node

    def _integer(self) -> int:
        sign = 1
        kind, value, offset = self.current
        if kind == "op" and value == "-":
            self._advance()
            sign = -1
            kind, value, offset = self.current
        if kind != "number":
            raise ExponentError(f"non-integer exponent {value or 'end of input'!r}", offset)
        if not value.isdigit():
            raise ExponentError(f"non-integer exponent {value!r}", offset)
        self._advance()
        return sign * int(value)

    def unary(self) -> Node:
        if self.current[0] == "op" and self.current[1] == "-":
            _, _, offset = self._advance()
            return Neg(self.atom(), offset=offset)
        return self.atom()

    def atom(self) -> Node:
        kind, value, offset = self.current
        if kind == "number":
            self._advance()
            number = float(value)
            if not math.isfinite(number):
                raise ExprSyntaxError(f"number {value!r} overflows a float", offset)
            return Num(number, offset=offset)
        if kind == "name":
            self._advance()
            is_call = self.current[0] == "op" and self.current[1] == "("
            if is_call:
                if value not in FUNCTIONS:
                    raise UnknownFunctionError(f"unknown function {value!r}", offset)
                self._advance()
                arg = self.expr()
                self._expect_op(")")
                return Call(value, arg, offset=offset)
            if value == "i":
                return Num(1j, offset=offset)
            if value in self.variables:
                return Var(value, offset=offset)
            if value in FUNCTIONS:
                raise ExprSyntaxError(f"function {value!r} needs an argument", offset)
            raise ExprSyntaxError(f"unknown identifier {value!r}", offset)
        if kind == "op" and value == "(":
            self._advance()
            node = self.expr()
            self._expect_op(")")
            return node
        raise ExprSyntaxError(f"unexpected {value or 'end of input'!r}", offset)


def parse(text: str, variables: Sequence[str] = ("z",)) -> HoloExpr:
    if text is None or not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    ast = _Parser(text, variables).parse()
    return HoloExpr(ast=ast, source=text, variables=tuple(variables))


def _as_expr(e: Union[HoloExpr, Node, str], variables=("z",)) -> HoloExpr:
    if isinstance(e, HoloExpr):
        return e
    if isinstance(e, Node):
        return HoloExpr(ast=e, source=to_text(e), variables=tuple(variables))
    return parse(e, variables)


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _format_real(x: float) -> str:
    text = repr(float(x))
    return text if x >= 0 else f"({text})"


def _format_num(value: complex) -> str:
    re_part, im_part = value.real, value.imag
    if im_part == 0:
        return _format_real(re_part)
    if im_part == 1 and re_part == 0:
        return "i"
    imag = f"{_format_real(im_part)}*i"
    if re_part == 0:
        return imag
    return f"({_format_real(re_part)} + {imag})"


@singledispatch
def _text(node: Node) -> str:
    raise TypeError(f"cannot print {type(node).__name__}")


@_text.register
def _(node: Num) -> str:
    return _format_num(node.value)


@_text.register
def _(node: Var) -> str:
    return node.name


@_text.register
def _(node: Neg) -> str:
    return f"-{_wrap(node.operand, PREC_ATOM)}"


@_text.register
def _(node: Binary) -> str:
    left = _wrap(node.left, node.precedence)
    # left associative: an equal-precedence right operand needs parentheses
    right = _wrap(node.right, node.precedence + 1)
    return f"{left} {node.symbol} {right}"


@_text.register
def _(node: Pow) -> str:
    return f"{_wrap(node.base, PREC_UNARY)}^{node.exponent}"


@_text.register
def _(node: Call) -> str:
    return f"{node.func}({_text(node.arg)})"


def _wrap(node: Node, min_precedence: int) -> str:
    text = _text(node)
    if node.precedence < min_precedence:
        return f"({text})"
    if isinstance(node, Num) and text.startswith("(") and min_precedence > PREC_UNARY:
        return text
    return text


def to_text(e: Union[HoloExpr, Node]) -> str:
    node = e.ast if isinstance(e, HoloExpr) else e
    return _text(node)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _cosh(x):
    return 0.5 * (np.exp(x) + np.exp(-x))


def _sinh(x):
    return 0.5 * (np.exp(x) - np.exp(-x))


_FUNC_IMPL = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "sinh": _sinh,
    "cosh": _cosh,
}


@singledispatch
def _evaluate(node: Node, env):
    raise TypeError(f"cannot evaluate {type(node).__name__}")


@_evaluate.register
def _(node: Num, env):
    return node.value


@_evaluate.register
def _(node: Var, env):
    try:
        return env[node.name]
    except KeyError:
        raise EvaluationError(f"evaluation: no value for variable {node.name!r}", node.offset)


@_evaluate.register
def _(node: Neg, env):
    return -_evaluate(node.operand, env)


@_evaluate.register
def _(node: Add, env):
    return _evaluate(node.left, env) + _evaluate(node.right, env)


@_evaluate.register
def _(node: Sub, env):
    return _evaluate(node.left, env) - _evaluate(node.right, env)


@_evaluate.register
def _(node: Mul, env):
    return _evaluate(node.left, env) * _evaluate(node.right, env)


@_evaluate.register
def _(node: Div, env):
    numerator = _evaluate(node.left, env)
    denominator = _evaluate(node.right, env)
    if np.any(np.asarray(denominator) == 0):
        raise EvaluationError("evaluation: division by zero", node.offset)
    return numerator / denominator


@_evaluate.register
def _(node: Pow, env):
    base = _evaluate(node.base, env)
    if node.exponent < 0:
        if np.any(np.asarray(base) == 0):
            raise EvaluationError("evaluation: division by zero", node.offset)
        return 1.0 / (np.asarray(base, dtype=complex) ** (-node.exponent))
    return np.asarray(base, dtype=complex) ** node.exponent


@_evaluate.register
def _(node: Call, env):
    return _FUNC_IMPL[node.func](np.asarray(_evaluate(node.arg, env), dtype=complex))


def _unwrap(value):
    arr = np.asarray(value, dtype=complex)
    return complex(arr) if arr.ndim == 0 else arr


def evaluate_env(e: Union[HoloExpr, Node], **env):
    """Evaluate with explicit variable bindings (scalars or broadcastable arrays)."""
    node = e.ast if isinstance(e, HoloExpr) else e
    with np.errstate(over="ignore", invalid="ignore"):
        return _unwrap(_evaluate(node, env))


def evaluate(e: Union[HoloExpr, Node], z) -> Union[complex, np.ndarray]:
    """Evaluate at z (complex scalar, ComplexValue or array); returns complex or complex array."""
    if isinstance(z, ComplexValue):
        z = complex(z)
    elif np.ndim(z) == 0:
        z = complex(ComplexValue.of(z))
    else:
        z = np.asarray(z, dtype=complex)
    variables = e.variables if isinstance(e, HoloExpr) else ("z",)
    env = {name: z for name in variables}
    return evaluate_env(e, **env)


def eval_value(e: HoloExpr, z) -> ComplexValue:
    """Scalar evaluation returning a validated ComplexValue (rejects overflow)."""
    value = evaluate(e, z)
    try:
        return ComplexValue.of(value)
    except EvaluationError:
        raise EvaluationError(f"evaluation: non-finite value of {e.source!r} at {complex(z)}")


# ---------------------------------------------------------------------------
# symbolic differentiation and simplification
# ---------------------------------------------------------------------------

ZERO = Num(0)
ONE = Num(1)


@singledispatch
def _derive(node: Node, var: str) -> Node:
    raise TypeError(f"cannot differentiate {type(node).__name__}")


@_derive.register
def _(node: Num, var):
    return ZERO


@_derive.register
def _(node: Var, var):
    return ONE if node.name == var else ZERO


@_derive.register
def _(node: Neg, var):
    return Neg(_derive(node.operand, var))


@_derive.register
def _(node: Add, var):
    return Add(_derive(node.left, var), _derive(node.right, var))


@_derive.register
def _(node: Sub, var):
    return Sub(_derive(node.left, var), _derive(node.right, var))


@_derive.register
def _(node: Mul, var):
    # product rule
    return Add(Mul(_derive(node.left, var), node.right), Mul(node.left, _derive(node.right, var)))


@_derive.register
def _(node: Div, var):
    # quotient rule
    numerator = Sub(Mul(_derive(node.left, var), node.right), Mul(node.left, _derive(node.right, var)))
    return Div(numerator, Pow(node.right, 2))


@_derive.register
def _(node: Pow, var):
    if node.exponent == 0:
        return ZERO
    return Mul(Mul(Num(node.exponent), Pow(node.base, node.exponent - 1)), _derive(node.base, var))


_OUTER_DERIVATIVE = {
    "exp": lambda a: Call("exp", a),
    "sin": lambda a: Call("cos", a),
    "cos": lambda a: Neg(Call("sin", a)),
    "sinh": lambda a: Call("cosh", a),
    "cosh": lambda a: Call("sinh", a),
}


@_derive.register
def _(node: Call, var):
    # chain rule
    return Mul(_OUTER_DERIVATIVE[node.func](node.arg), _derive(node.arg, var))


def _is_num(node, value=None):
    return isinstance(node, Num) and (value is None or node.value == value)


@singledispatch
def _simplify(node: Node) -> Node:
    return node


@_simplify.register
def _(node: Neg):
    inner = _simplify(node.operand)
    if _is_num(inner):
        return Num(-inner.value)
    if isinstance(inner, Neg):
        return inner.operand
    return Neg(inner)


@_simplify.register
def _(node: Add):
    left, right = _simplify(node.left), _simplify(node.right)
    if _is_num(left) and _is_num(right):
        return Num(left.value + right.value)
    if _is_num(left, 0):
        return right
    if _is_num(right, 0):
        return left
    return Add(left, right)


@_simplify.register
def _(node: Sub):
    left, right = _simplify(node.left), _simplify(node.right)
    if _is_num(left) and _is_num(right):
        return Num(left.value - right.value)
    if _is_num(right, 0):
        return left
    if _is_num(left, 0):
        return _simplify(Neg(right))
    if left == right:
        return ZERO
    return Sub(left, right)


@_simplify.register
def _(node: Mul):
    left, right = _simplify(node.left), _simplify(node.right)
    if _is_num(left) and _is_num(right):
        return Num(left.value * right.value)
    if _is_num(left, 0) or _is_num(right, 0):
        return ZERO
    if _is_num(left, 1):
        return right
    if _is_num(right, 1):
        return left
    return Mul(left, right)


@_simplify.register
def _(node: Div):
    left, right = _simplify(node.left), _simplify(node.right)
    if _is_num(right, 1):
        return left
    if _is_num(left, 0) and not _is_num(right, 0):
        return ZERO
    if _is_num(left) and _is_num(right) and right.value != 0:
        return Num(left.value / right.value)
    return Div(left, right, offset=node.offset)


@_simplify.register
def _(node: Pow):
    base = _simplify(node.base)
    if node.exponent == 0:
        return ONE
    if node.exponent == 1:
        return base
    if _is_num(base) and (node.exponent > 0 or base.value != 0):
        return Num(base.value ** node.exponent)
    return Pow(base, node.exponent, offset=node.offset)


@_simplify.register
def _(node: Call):
    arg = _simplify(node.arg)
    if _is_num(arg):
        return Num(complex(_FUNC_IMPL[node.func](np.complex128(arg.value))))
    return Call(node.func, arg)


def simplify(e: Union[HoloExpr, Node]) -> Union[HoloExpr, Node]:
    if isinstance(e, HoloExpr):
        ast = _simplify(e.ast)
        return HoloExpr(ast=ast, source=to_text(ast), variables=e.variables)
    return _simplify(e)


def derive(e: Union[HoloExpr, str], var: str = "z") -> HoloExpr:
    """Exact symbolic derivative with respect to `var`, simplified."""
    expr = _as_expr(e)
    ast = _simplify(_derive(expr.ast, var))
    return HoloExpr(ast=ast, source=to_text(ast), variables=expr.variables)


def free_variables(node: Node) -> set:
    if isinstance(node, Var):
        return {node.name}
    out = set()
    for child in node.children:
        out |= free_variables(child)
    return out


def _vanishes_on_samples(e: HoloExpr, tol: float = 1e-12) -> bool:
    values = evaluate(e, _SAMPLE_POINTS)
    if not np.all(np.isfinite(values)):
        return False
    return bool(np.all(np.abs(values) <= tol))


def is_constant(e: Union[HoloExpr, str], var: str = "z") -> bool:
    """Derivative identically zero: symbolic test first, numeric check at 8 points as fallback."""
    expr = _as_expr(e)
    d = derive(expr, var)
    if _is_num(d.ast, 0) or var not in free_variables(simplify(expr.ast)):
        return True
    try:
        return _vanishes_on_samples(d)
    except EvaluationError:
        return False


def is_affine(e: Union[HoloExpr, str], var: str = "z") -> bool:
    return is_constant(derive(e, var), var)


# ---------------------------------------------------------------------------
# path integration
# ---------------------------------------------------------------------------

def integrate_segment(e: Union[HoloExpr, str], z0, z1, tol: float = 1e-12) -> complex:
    """Integral of e along the straight segment from z0 to z1 (adaptive Gauss-Legendre)."""
    expr = _as_expr(e)
    z0, z1 = complex(ComplexValue.of(z0)), complex(ComplexValue.of(z1))
    dz = z1 - z0

    def integrand(t):
        return evaluate(expr, z0 + t * dz) * dz

    value, _ = adaptive_gauss_legendre(integrand, 0.0, 1.0, tol)
    return complex(value)
