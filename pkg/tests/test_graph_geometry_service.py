import math

import numpy as np
import pytest

from stationary_lab.errors import DegenerateDataError, DimensionError, NotSpacelikeError
from stationary_lab.models.lt_projection_character import ProjectionCharacter
from stationary_lab.services import graph_geometry_service as geo
from stationary_lab.services import mink_service as mink

GRID = [(x1, x2) for x1 in (-1.0, 0.0, 1.0) for x2 in (-1.0, 0.5)]


def test_affine_metric():
    f = geo.affine([0.5, 0.0], [0.0, 0.0])
    sample = geo.metric_at(f, (0.3, -0.2))
    assert (sample.g11, sample.g12, sample.g22) == pytest.approx((1.25, 0.0, 1.0))
    assert sample.W == pytest.approx(math.sqrt(1.25))
    assert sample.area_ratio == pytest.approx(1 / math.sqrt(1.25))


def test_jacobian_of_expression_graph():
    f = geo.from_expressions(["x1*x2", "x1^2"])
    p, q = geo.jacobian(f, (2.0, 3.0))
    np.testing.assert_allclose(p, [3.0, 4.0])
    np.testing.assert_allclose(q, [2.0, 0.0])


def test_numeric_partials_match_symbolic():
    symbolic = geo.from_expressions(["sin(x1)*x2", "cosh(x2)"])
    numeric = type(symbolic)(m=2, values=symbolic.values, fd_step=1e-5)
    for x in GRID:
        for a, b in zip(geo.jacobian(symbolic, x), geo.jacobian(numeric, x)):
            np.testing.assert_allclose(a, b, atol=1e-8)


def test_lightlike_graph_is_isometric():
    f = geo.lightlike("x1^2 - x2^2", [1.0, 1.0])
    for x in GRID:
        sample = geo.metric_at(f, x)
        np.testing.assert_allclose(sample.matrix(), np.eye(2), atol=1e-12)
        assert sample.W == pytest.approx(1.0, abs=1e-12)


def test_lightlike_graph_rejects_non_lightlike_direction():
    with pytest.raises(DegenerateDataError):
        geo.lightlike("x1", [1.0, 0.5])
    with pytest.raises(DimensionError):
        geo.lightlike("x1", [1.0])


@pytest.mark.parametrize("W, expected", [
    (0.5, ProjectionCharacter.AREA_INCREASING),
    (1.0, ProjectionCharacter.AREA_PRESERVING),
    (2.0, ProjectionCharacter.AREA_DECREASING),
])
def test_projection_character(W, expected):
    assert geo.projection_character(W) is expected


def test_non_spacelike_sample():
    f = geo.affine([0.0, 2.0], [0.0, 0.0])
    sample = geo.metric_at(f, (0.0, 0.0))
    assert not sample.spacelike
    assert sample.W is None
    with pytest.raises(NotSpacelikeError):
        geo.stationarity_residual(f, (0.0, 0.0))


@pytest.mark.parametrize("x", [(0.0, 0.0), (0.3, -0.2), (0.8, 0.0)])
def test_metric_at_agrees_with_pair_check(x):
    f = geo.from_expressions(["0", "x1^2"])
    p, q = geo.jacobian(f, x)
    assert geo.metric_at(f, x).spacelike is mink.is_spacelike_pair(p, q)
    assert geo.metric_at(f, x).spacelike is (abs(x[0]) < 0.5)


def test_metric_fields_mark_non_spacelike_points():
    f = geo.from_expressions(["0", "x1^2"])
    X1, X2 = np.meshgrid(geo.grid_axes(1.0, 5), geo.grid_axes(1.0, 5), indexing="ij")
    fields = geo.metric_fields(f, X1, X2)
    # g11 = 1 - 4 x1^2 is positive only for |x1| < 1/2
    assert fields["spacelike"][2].all()
    assert not fields["spacelike"][0].any()
    assert np.isnan(fields["W"][0]).all()


def test_affine_graph_is_stationary():
    f = geo.affine([0.3, 0.1, 0.2], [0.0, 0.4, -0.1])
    assert geo.max_residual(f, GRID) < 1e-10


def test_paraboloid_is_not_stationary():
    f = geo.from_expressions(["x1^2 + x2^2", "0"])
    assert geo.max_residual(f, [(0.5, 0.5)], 1e-3) > 1e-2


def test_grid_axes_validation():
    with pytest.raises(ValueError):
        geo.grid_axes(0.0, 5)
    with pytest.raises(ValueError):
        geo.grid_axes(1.0, 1)


def test_incomplete_example_is_spacelike():
    f = geo.incomplete_example(1)
    mask, fraction = geo.spacelike_region(f, 10.0, 41)
    assert fraction == 1.0
    assert mask.shape == (41, 41)


def test_incomplete_example_curve_has_finite_length():
    f = geo.incomplete_example(1)
    length = geo.curve_length(f, geo.line_path(), -math.inf, math.inf, T=50.0)
    assert length.value == pytest.approx(2.8042, abs=1e-3)
    assert length.finite
    assert length.tail_lower <= 2e-4 * (1 + 1e-3)
    assert length.tail_upper <= 2e-4 * (1 + 1e-3)
    assert length.t_range == (-50.0, 50.0)


def test_euclidean_length_of_line():
    assert geo.euclidean_length(geo.line_path(), -5.0, 5.0) == pytest.approx(10.0)
    assert geo.euclidean_length(geo.line_path(direction=(3.0, 4.0)), 0.0, 1.0) == pytest.approx(5.0)


def test_constant_speed_has_no_integrable_tail():
    length = geo.curve_length(geo.constant([0.0, 0.0]), geo.line_path(), 0.0, math.inf, T=10.0)
    assert length.value == pytest.approx(10.0)
    assert not length.finite


def test_residual_order_is_second_order():
    f = geo.from_expressions(["x1^2 + x2^2", "0"])
    ratio = geo.residual_order(f, [(0.5, 0.5)], 1e-2)
    assert ratio == pytest.approx(1.0, abs=0.05)


def test_mww_example_is_not_spacelike_everywhere():
    _, fraction = geo.spacelike_region(geo.mww_example(), 3.0, 61)
    assert 0.0 < fraction < 1.0
