import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stationary_lab.errors import (
    EvaluationError,
    ExponentError,
    ExprSyntaxError,
    UnknownFunctionError,
)
from stationary_lab.models.dt_holo_expr import ComplexValue
from stationary_lab.services import holo_expr_service as holo

atoms = st.sampled_from(["z", "i", "2", "0.5", "3.25"])


def _extend(children):
    binary = st.tuples(children, st.sampled_from(["+", "-", "*"]), children).map(
        lambda t: f"({t[0]} {t[1]} {t[2]})"
    )
    calls = st.tuples(st.sampled_from(["exp", "sin", "cos", "sinh", "cosh"]), children).map(
        lambda t: f"{t[0]}({t[1]})"
    )
    powers = st.tuples(children, st.integers(0, 3)).map(lambda t: f"({t[0]})^{t[1]}")
    negated = children.map(lambda s: f"-({s})")
    return binary | calls | powers | negated


def nested(depth):
    if depth == 0:
        return atoms
    return atoms | _extend(nested(depth - 1))


expressions = nested(3)
points = st.complex_numbers(max_magnitude=0.75, allow_nan=False, allow_infinity=False)


def test_parse_and_evaluate():
    e = holo.parse("z^2 + 1")
    assert holo.evaluate(e, 2) == 5
    assert holo.evaluate(holo.parse("(1+i)*z"), 1j) == pytest.approx(-1 + 1j)


def test_unary_minus_binds_tighter_than_power():
    assert holo.evaluate(holo.parse("-z^2"), 2) == pytest.approx(4)
    assert holo.evaluate(holo.parse("-(z^2)"), 2) == pytest.approx(-4)


def test_vectorized_evaluation():
    z = np.array([0.0, 1.0, 1j])
    np.testing.assert_allclose(holo.evaluate(holo.parse("sinh(z)"), z), np.sinh(z), atol=1e-15)


def test_derivatives():
    assert holo.evaluate(holo.derive("z^3"), 2) == pytest.approx(12)
    assert holo.evaluate(holo.derive("sinh(2*z)"), 0.3) == pytest.approx(2 * cmath.cosh(0.6))
    assert holo.evaluate(holo.derive("1/z"), 2) == pytest.approx(-0.25)
    assert holo.to_text(holo.derive("5")) == "0.0"


def test_derivative_in_graph_variables():
    e = holo.parse("x1^2 * x2", ("x1", "x2"))
    d = holo.derive(e, "x2")
    assert holo.evaluate_env(d, x1=3.0, x2=7.0) == pytest.approx(9)


@pytest.mark.parametrize("text, error, offset", [
    ("foo(z)", UnknownFunctionError, 0),
    ("z^1.5", ExponentError, 2),
    ("z +", ExprSyntaxError, 3),
    ("(z", ExprSyntaxError, 2),
    ("w", ExprSyntaxError, 0),
    ("", ExprSyntaxError, 0),
])
def test_syntax_errors_carry_offsets(text, error, offset):
    with pytest.raises(error) as info:
        holo.parse(text)
    assert info.value.offset == offset


def test_division_by_zero():
    with pytest.raises(EvaluationError):
        holo.evaluate(holo.parse("1/z"), 0)
    with pytest.raises(EvaluationError):
        holo.evaluate(holo.parse("z^-2"), 0)


def test_eval_value_rejects_overflow():
    with pytest.raises(EvaluationError):
        holo.eval_value(holo.parse("exp(exp(z))"), 10)
    assert holo.eval_value(holo.parse("z"), 1 + 2j) == ComplexValue(1.0, 2.0)


def test_constancy_predicates():
    assert holo.is_constant("1+2*i")
    assert holo.is_constant("z - z")
    assert holo.is_constant("cosh(z)^2 - sinh(z)^2")
    assert not holo.is_constant("z^2")
    assert holo.is_affine("3*z + 1")
    assert not holo.is_affine("z^2")


def test_integrate_segment():
    assert holo.integrate_segment("z", 0, 1 + 1j) == pytest.approx(1j, abs=1e-13)
    assert holo.integrate_segment("cosh(z)", 0, 1) == pytest.approx(cmath.sinh(1), abs=1e-13)


@pytest.mark.parametrize("text", ["z^2", "exp(z)", "sinh(2*z) - z^3"])
def test_integrate_segment_is_path_independent(text):
    z0, zm, z1 = -0.5 + 0.2j, 1.5 + 1j, 0.3 - 0.8j
    tol = 1e-12
    direct = holo.integrate_segment(text, z0, z1, tol)
    split = holo.integrate_segment(text, z0, zm, tol) + holo.integrate_segment(text, zm, z1, tol)
    assert abs(direct - split) <= 2 * tol * max(1.0, abs(direct))


def test_exp_at_i_pi():
    value = complex(holo.evaluate(holo.parse("exp(z)"), 1j * math.pi))
    assert abs(value + 1) <= 1e-15


def test_overflowing_literal_is_rejected():
    with pytest.raises(ExprSyntaxError) as info:
        holo.parse("z + 1e400")
    assert info.value.offset == 4


@given(expressions)
@settings(max_examples=200, deadline=None)
def test_print_parse_round_trip(text):
    e = holo.parse(text)
    assert holo.parse(holo.to_text(e)).ast == e.ast


@given(expressions, points)
@settings(max_examples=200, deadline=None)
def test_cauchy_riemann(text, z):
    e = holo.parse(text)
    d = complex(holo.evaluate(holo.derive(e), z))
    h = 1e-5
    dx = (complex(holo.evaluate(e, z + h)) - complex(holo.evaluate(e, z - h))) / (2 * h)
    dy = (complex(holo.evaluate(e, z + 1j * h)) - complex(holo.evaluate(e, z - 1j * h))) / (2j * h)
    scale = 1 + abs(d) + abs(complex(holo.evaluate(e, z)))
    assert abs(dx - d) <= 1e-5 * scale
    assert abs(dy - d) <= 1e-5 * scale
