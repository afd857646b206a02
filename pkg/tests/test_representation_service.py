import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from stationary_lab.errors import (
    CodimensionError,
    ConfigError,
    DegenerateDataError,
    DimensionError,
)
from stationary_lab.models.lt_bernstein_case import AreaIncreasingCase, BernsteinCase
from stationary_lab.services import graph_geometry_service as geo
from stationary_lab.services import mink_service as mink
from stationary_lab.services import representation_service as rep

SQRT3 = math.sqrt(3.0)
BETAS = ["z", "z^2", "sinh(z)", "(1+i)*z^3"]


def _data_or_skip(a, b, beta):
    # mu vanishes only next to a = 0, b = 1
    try:
        return rep.make_canonical(a, b, (), beta, 2)
    except DegenerateDataError:
        assume(False)


def test_principal_sqrt_branch():
    assert rep.principal_sqrt(-4) == 2j
    assert rep.principal_sqrt(4) == 2
    assert rep.principal_sqrt(-1j).imag >= 0


def test_canonical_data(data_b2):
    assert data_b2.c == -2j
    assert data_b2.mu == pytest.approx(SQRT3 / 2)
    assert data_b2.n == 4
    assert data_b2.to_dict() == {"a": 0.0, "b": 2.0, "consts": [], "beta": "z", "m": 2}


def test_data_round_trips_through_dict(data_case_iii, data_lightlike):
    for data in (data_case_iii, data_lightlike):
        assert rep.data_from_dict(data.to_dict()) == data


def test_a0_b1_gives_lightlike_family(data_lightlike):
    assert data_lightlike.is_lightlike
    assert data_lightlike.v == (1.0,)
    alpha = rep.alpha_at(data_lightlike, 2.0)
    np.testing.assert_allclose(alpha, [0.5, -0.5j, 2.0, 2.0])


@pytest.mark.parametrize("kwargs, error", [
    ({"a": 0.0, "b": -1.0}, DegenerateDataError),
    ({"a": 0.0, "b": 0.0}, DegenerateDataError),
    ({"a": 0.0, "b": 1.0, "consts": [1.0]}, DimensionError),
    ({"a": 0.0, "b": 1.0, "m": 1}, CodimensionError),
    ({"a": 0.0, "b": math.sqrt(2.0), "consts": [1.0], "m": 3}, DegenerateDataError),
    ({"a": 1.0, "b": 1.0, "beta": "1/z"}, ConfigError),
    ({"a": 1.0, "b": 1.0, "beta": "z^-1"}, ConfigError),
])
def test_make_canonical_rejects(kwargs, error):
    kwargs = {"consts": (), "beta": "z", "m": 2, **kwargs}
    with pytest.raises(error):
        rep.make_canonical(kwargs["a"], kwargs["b"], kwargs["consts"], kwargs["beta"], kwargs["m"])


def test_make_lightlike_needs_unit_vector():
    with pytest.raises(DegenerateDataError):
        rep.make_lightlike("z", [0.5, 0.5], 3)
    with pytest.raises(DimensionError):
        rep.make_lightlike("z", [1.0], 3)


@given(
    st.floats(min_value=-2, max_value=2),
    st.floats(min_value=1e-3, max_value=2),
    st.sampled_from(BETAS),
    st.lists(st.complex_numbers(max_magnitude=0.75, allow_nan=False, allow_infinity=False),
             min_size=1, max_size=20),
)
@settings(max_examples=50, deadline=None)
def test_alpha_is_isotropic(a, b, beta, zs):
    data = _data_or_skip(a, b, beta)
    defect = rep.isotropy_defect(data, np.array(zs))
    assert np.max(np.abs(defect)) < 1e-12


@given(
    st.floats(min_value=-2, max_value=2),
    st.floats(min_value=1e-3, max_value=2),
    st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
)
@settings(max_examples=50, deadline=None)
def test_conformal_factor_lower_bound(a, b, z):
    data = _data_or_skip(a, b, "z")
    assert 2 * rep.hermitian_norm(data, z) >= rep.completeness_bound(data) - 1e-12


def test_synthesize_point(data_b2):
    x = rep.synthesize_point(data_b2, 1.0)
    np.testing.assert_allclose(
        x.coords, [1.0, 0.0, SQRT3 * math.sinh(1.0), SQRT3 * (math.cosh(1.0) - 1.0)], atol=1e-12
    )


def test_synthesize_closed_form_matches_quadrature(data_case_iii):
    z = np.array([0.3 + 0.4j, -0.7 + 0.2j])
    closed = rep.synthesize(data_case_iii, z, method="closed")
    quad = rep.synthesize(data_case_iii, z, method="quadrature")
    np.testing.assert_allclose(closed, quad, atol=1e-10)


def test_synthesize_without_closed_form():
    data = rep.make_canonical(0.0, 2.0, (), "z^2", 2)
    with pytest.raises(DegenerateDataError):
        rep.synthesize(data, 0.5, method="closed")
    x = rep.synthesize(data, 0.5)
    assert x.shape == (4,)
    assert x[0] == pytest.approx(0.5)


def test_graph_coordinates(data_case_iii):
    # x1 = u1 and x2 = a u1 + b u2
    x = rep.synthesize(data_case_iii, 0.5 + 0.25j)
    assert x[0] == pytest.approx(0.5)
    assert x[1] == pytest.approx(0.75)
    assert rep.chart(data_case_iii, 0.5, 0.75) == pytest.approx(0.5 + 0.25j)


def test_graph_eval(data_b2):
    np.testing.assert_allclose(
        rep.graph_eval(data_b2, 1.0, 0.0), [SQRT3 * math.sinh(1.0), SQRT3 * (math.cosh(1.0) - 1.0)],
        atol=1e-12,
    )


def test_graph_surface_partials_match_differences(data_case_iii):
    f = rep.graph_surface(data_case_iii)
    numeric = type(f)(m=f.m, values=f.values, fd_step=1e-5)
    for x in [(0.2, -0.4), (1.0, 0.5)]:
        for a, b in zip(geo.jacobian(f, x), geo.jacobian(numeric, x)):
            np.testing.assert_allclose(a, b, atol=1e-7)


def test_recovered_graph_is_stationary(data_b2):
    f = rep.graph_surface(data_b2)
    points = [(x1, x2) for x1 in (-1.0, 0.0, 1.0) for x2 in (-1.0, 0.0, 1.0)]
    assert geo.max_residual(f, points, 1e-3) < 1e-6


def test_w_at_origin(data_b2):
    assert rep.w_of(data_b2, 0.0) == pytest.approx(2.0)
    assert rep.w_closed_form(data_b2, 0.0) == pytest.approx(2.0)
    assert rep.w_range(data_b2) == pytest.approx((0.5, 2.0))


def test_w_matches_graph_metric(data_case_iii):
    f = rep.graph_surface(data_case_iii)
    for x in [(0.0, 0.0), (0.3, -0.8), (-1.0, 1.0)]:
        z = complex(rep.chart(data_case_iii, *x))
        assert geo.metric_at(f, x).W == pytest.approx(rep.w_of(data_case_iii, z), rel=1e-10)


def test_w_formulas_agree(data_case_iii):
    z = np.linspace(-2, 2, 11)[:, None] + 1j * np.linspace(-2, 2, 11)[None, :]
    np.testing.assert_allclose(rep.w_of(data_case_iii, z), rep.w_closed_form(data_case_iii, z), atol=1e-10)


def test_classification(data_flat, data_lightlike, data_case_iii):
    assert rep.classify(data_flat).case is BernsteinCase.CASE_I
    case_ii = rep.classify(data_lightlike)
    assert case_ii.case is BernsteinCase.CASE_II
    assert case_ii.y0 == (1.0, 1.0)
    case_iii = rep.classify(data_case_iii)
    assert case_iii.case is BernsteinCase.CASE_III
    assert case_iii.r1 == pytest.approx((3 - math.sqrt(5)) / 2, abs=1e-14)
    assert case_iii.r2 == pytest.approx((3 + math.sqrt(5)) / 2, abs=1e-14)
    assert case_iii.product == pytest.approx(1.0, abs=1e-12)


def test_higher_codimension_is_not_a_trichotomy():
    data = rep.make_canonical(0.0, 1.5, (0.5,), "z", 3)
    assert not rep.classify(data).trichotomy


def test_area_increasing_cases(data_flat, data_lightlike, data_case_iii):
    assert rep.classify_area_increasing(data_flat).case is AreaIncreasingCase.ALL_CONSTANT
    verdict = rep.classify_area_increasing(data_case_iii)
    assert verdict.case is AreaIncreasingCase.LAST_NONCONSTANT
    assert not verdict.w_le_one_possible
    verdict = rep.classify_area_increasing(data_lightlike)
    assert verdict.case is AreaIncreasingCase.LIGHTLIKE
    assert verdict.w_le_one_possible


def test_case_iii_for_ratio():
    r1, r2 = rep.w_range(rep.case_iii_for_ratio(4.0))
    assert (r1, r2) == pytest.approx((0.25, 4.0))
    with pytest.raises(ValueError):
        rep.case_iii_for_ratio(1.0)


def test_construct_ber3():
    data = rep.construct_ber3(4.0, 0.1, 3)
    assert data.b == pytest.approx(2.01)
    assert data.consts == pytest.approx((SQRT3,))
    r1, r2 = rep.w_range(data)
    assert r1 * r2 == pytest.approx(4.0, abs=1e-12)
    assert r2 - r1 == pytest.approx(0.0199503, abs=1e-7)
    stats = rep.w_statistics(data, 20.0, 401)
    assert 3.99 <= stats["product"] <= 4.01
    assert 0 < stats["spread"] < 0.1


def test_construct_ber3_c_one():
    r1, r2 = rep.w_range(rep.construct_ber3(1.0, 0.5, 3))
    assert r1 * r2 == pytest.approx(1.0, abs=1e-3)
    assert 0 < r2 - r1 < 0.5


@pytest.mark.parametrize("C, eps, m, error", [
    (0.5, 0.1, 3, DegenerateDataError),
    (4.0, 0.0, 3, DegenerateDataError),
    (4.0, 0.1, 2, CodimensionError),
])
def test_construct_ber3_rejects(C, eps, m, error):
    with pytest.raises(error):
        rep.construct_ber3(C, eps, m)


def test_gauss_round_trip(data_case_iii):
    g = rep.alpha_to_gauss(data_case_iii)
    z = np.array([0.0, 0.4 - 0.3j, -1.0 + 0.5j])
    np.testing.assert_allclose(rep.weierstrass_to_alpha(g, z), rep.alpha_at(data_case_iii, z), atol=1e-12)


def test_gauss_maps_need_canonical_r14(data_lightlike):
    with pytest.raises(DegenerateDataError):
        rep.alpha_to_gauss(data_lightlike)
    with pytest.raises(CodimensionError):
        rep.alpha_to_gauss(rep.make_canonical(0.0, 1.5, (0.5,), "z", 3))


def test_ber1_check(data_flat, data_lightlike, data_case_iii):
    for data in (data_flat, data_lightlike, data_case_iii):
        assert rep.ber1_check(data, 5.0, 41)["consistent"]
    assert rep.ber1_check(data_case_iii, 5.0, 41)["coexist"]


def test_attainment(data_case_iii):
    result = rep.attainment(data_case_iii, 20.0, 401, delta=0.05, N=10)
    assert result["passed"]
    assert result["min_count"] >= 10
    with pytest.raises(DegenerateDataError):
        rep.attainment(rep.construct_ber3(4.0, 0.1, 3), 5.0, 41, delta=0.05)


def test_crossing_counts():
    W = np.array([[0.0, 2.0], [2.0, 0.0]])
    assert rep.crossing_counts(W, [1.0]) == [4]


def _random_polynomial(rng, degree):
    coefficients = np.round(rng.uniform(-1, 1, size=(degree + 1, 2)), 3)
    return " + ".join(f"({float(re)!r} + ({float(im)!r})*i)*z^{k}" for k, (re, im) in enumerate(coefficients))


def test_weierstrass_data_is_isotropic():
    rng = np.random.default_rng(11)
    for _ in range(5):
        g = rep.gauss_from_expressions(*(_random_polynomial(rng, 3) for _ in range(3)))
        z = rng.uniform(-1, 1, 20) + 1j * rng.uniform(-1, 1, 20)
        alpha = rep.weierstrass_to_alpha(g, z)
        defect = np.abs(mink.complex_mink_inner(alpha, alpha))
        scale = 1 + np.sum(np.abs(alpha) ** 2, axis=0)
        assert np.all(defect <= 1e-12 * scale)


def test_weierstrass_example_matches_reference_data(data_b2):
    s = repr(SQRT3)
    g = rep.gauss_from_expressions(f"{s}*exp(-z)", f"-exp(-z)/{s}", f"{s}/4*exp(z)")
    np.testing.assert_allclose(rep.weierstrass_to_alpha(g, 0.0), rep.alpha_at(data_b2, 0.0), atol=1e-12)


def test_gauss_maps_of_reference_data(data_b2):
    g = rep.alpha_to_gauss(data_b2)
    assert g.r == pytest.approx(SQRT3)
    assert g.theta == pytest.approx(0.0, abs=1e-15)
    assert g.phi_coef * g.psi_coef == pytest.approx(-1.0)
