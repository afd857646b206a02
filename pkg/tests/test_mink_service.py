import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stationary_lab.errors import DimensionError
from stationary_lab.models.dt_mink_vector import MinkVector
from stationary_lab.models.lt_causal_class import CausalClass
from stationary_lab.services import mink_service as mink

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


def vectors(n):
    return st.lists(finite, min_size=n, max_size=n)


def test_signature_puts_time_last():
    np.testing.assert_array_equal(mink.signature(4), [1.0, 1.0, 1.0, -1.0])
    with pytest.raises(DimensionError):
        mink.signature(1)


def test_inner_product_values():
    assert mink.mink_inner((1, 0, 0), (1, 0, 0)) == 1.0
    assert mink.mink_inner((0, 0, 1), (0, 0, 1)) == -1.0
    assert mink.mink_inner(MinkVector((1, 2, 3)), MinkVector((4, 5, 6))) == 4 + 10 - 18


def test_inner_product_dimension_mismatch():
    with pytest.raises(DimensionError):
        mink.mink_inner((1, 0), (1, 0, 0))
    with pytest.raises(DimensionError):
        MinkVector((1.0,))


@given(vectors(4), vectors(4))
def test_inner_product_is_symmetric(u, v):
    assert mink.mink_inner(u, v) == mink.mink_inner(v, u)


@given(vectors(3), vectors(3), vectors(3), st.floats(min_value=-10, max_value=10))
def test_inner_product_is_bilinear(u, v, w, s):
    lhs = mink.mink_inner(np.add(u, np.multiply(s, v)), w)
    rhs = mink.mink_inner(u, w) + s * mink.mink_inner(v, w)
    scale = 1 + np.abs(u).max() * np.abs(w).max() + abs(s) * np.abs(v).max() * np.abs(w).max()
    assert abs(lhs - rhs) <= 1e-9 * scale


@pytest.mark.parametrize("u, expected", [
    ((1.0, 0.0, 0.0), CausalClass.SPACELIKE),
    ((0.0, 0.0, 1.0), CausalClass.TIMELIKE),
    ((1.0, 0.0, 1.0), CausalClass.LIGHTLIKE),
    ((0.6, 0.8, 1.0), CausalClass.LIGHTLIKE),
])
def test_causal_class(u, expected):
    assert mink.causal_class(u) is expected


def test_causal_class_rejects_negative_tolerance():
    with pytest.raises(ValueError):
        mink.causal_class((1.0, 0.0), -1.0)


def test_complex_inner_works_on_stacked_components():
    alpha = np.array([[1.0, 1j], [0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(mink.complex_mink_inner(alpha, alpha), [0.0, 0.0])


def test_inner_fields_codimension_one_is_timelike():
    p = np.array([[2.0, 3.0]])
    np.testing.assert_array_equal(mink.inner_fields(p, p), [-4.0, -9.0])


def test_spacelike_pair():
    assert mink.is_spacelike_pair((0.0, 0.0), (0.0, 0.0))
    assert mink.is_spacelike_pair((0.0, 0.5), (0.0, 0.0))
    assert not mink.is_spacelike_pair((0.0, 2.0), (0.0, 0.0))
    assert mink.is_spacelike_pair((0.5,), (0.0,))
    assert not mink.is_spacelike_pair((1.5,), (0.0,))


def test_vector_arithmetic():
    v = MinkVector((1, 2)) + 2 * MinkVector((0.5, 0.5))
    assert v.coords == (2.0, 3.0)
    assert v.to_dict() == {"coords": [2.0, 3.0], "n": 2}
