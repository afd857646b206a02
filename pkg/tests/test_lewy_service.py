import numpy as np
import pytest

from stationary_lab.errors import NotSpacelikeError
from stationary_lab.services import graph_geometry_service as geo
from stationary_lab.services import lewy_service as lewy
from stationary_lab.services import representation_service as rep


@pytest.fixture
def surfaces(data_case_iii):
    return {
        "zero": geo.constant([0.0, 0.0]),
        "lightlike": geo.lightlike("x1^2 - x2^2", [1.0, 1.0]),
        "canonical": rep.graph_surface(data_case_iii),
    }


def test_jacobian_from_synthetic_metric():
    sample = geo.metric_sample(4.0, 0.0, 1.0)
    assert sample.W == pytest.approx(2.0)
    JL, lambdas = lewy.jacobian_from_metric(sample)
    np.testing.assert_allclose(JL, np.diag([3.0, 1.5]))
    assert lambdas == pytest.approx((1.0, 2.0))


def test_jacobian_needs_spacelike_metric():
    with pytest.raises(NotSpacelikeError):
        lewy.jacobian_from_metric(geo.metric_sample(-1.0, 0.0, 1.0))


def test_flat_plane_doubles_coordinates():
    f = geo.constant([0.0, 0.0])
    assert lewy.lewy_map(f, (0.5, -1.5)) == pytest.approx((1.0, -3.0))
    sample = lewy.lewy_sample(f, (0.5, -1.5))
    assert sample.xi == pytest.approx((0.5, -1.5))
    assert sample.warning is None


def test_forms_are_closed_on_stationary_graphs(surfaces):
    for f in surfaces.values():
        assert lewy.closedness_report(f, 1.0, 5)["max_residual"] < 1e-6


def test_forms_are_not_closed_on_a_paraboloid():
    f = geo.from_expressions(["x1^2 + x2^2", "0"])
    assert max(lewy.closedness_residual(f, (0.5, 0.5))) > 1e-2
    _, warning = lewy.xi_potentials(f, (0.5, 0.5))
    assert warning is not None


def test_jl_is_length_increasing(surfaces):
    for f in surfaces.values():
        assert lewy.jacobian_report(f, 1.0, 5)["min_eigenvalue"] > 1.0


def test_xi_is_path_independent(surfaces):
    for f in surfaces.values():
        assert lewy.path_independence(f, (1.0, 1.0), tol=1e-10) < 1e-8


def test_eta_is_isothermal(surfaces):
    for f in surfaces.values():
        result = lewy.conformal_check(f, 1.0, 3)
        assert result["anisotropy"] < 1e-4
        assert result["off_diagonal"] < 1e-4
        assert result["conf_deviation"] < 1e-4


def test_coordinates_are_holomorphic_in_eta(surfaces):
    for f in surfaces.values():
        result = lewy.beta_holomorphy_check(f, 1.0, 3)
        assert result["cr_residual"] < 1e-4
        assert result["orientation_positive"]
