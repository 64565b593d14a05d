import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from axokern.numeric import (
    COORD_TOL,
    ORT_TOL,
    Tolerance,
    get_elem,
    identity,
    is_one,
    is_zero,
    m22,
    m23,
    set_elem,
    v2,
    v3,
    v_eq,
)

finite32 = st.floats(min_value=-1e4, max_value=1e4, allow_nan=False, width=32)


def test_get_elem_row_major():
    assert get_elem(m23([[1, 2, 3], [4, 5, 6]]), 4) == 5
    assert get_elem(v3(7, 8, 9), 0) == 7
    a, b, c, d = 1.5, -2.0, 3.25, 4.0
    assert get_elem(m22([[a, b], [c, d]]), 3) == d


def test_set_elem():
    assert set_elem(v2(1, 2), 1, 9).tolist() == [1, 9]
    m = set_elem(set_elem(np.zeros((2, 2)), 0, 1), 3, 1)
    assert np.array_equal(m, identity(2))


def test_set_elem_leaves_input_alone():
    v = v3(1, 2, 3)
    w = set_elem(v, 0, 5)
    assert v.tolist() == [1, 2, 3]
    assert w.tolist() == [5, 2, 3]
    with pytest.raises(ValueError):
        w[0] = 1


@pytest.mark.parametrize("i", [-1, 6, 100])
def test_index_out_of_range(i):
    with pytest.raises(IndexError):
        get_elem(m23(np.zeros((2, 3))), i)
    with pytest.raises(IndexError):
        set_elem(m23(np.zeros((2, 3))), i, 1.0)


@given(st.lists(finite32, min_size=9, max_size=9), st.integers(0, 8), finite32)
def test_read_after_write(vals, i, x):
    m = np.array(vals, dtype=np.float32).reshape(3, 3)
    assert get_elem(set_elem(m, i, x), i) == np.float32(x)


@given(st.lists(finite32, min_size=6, max_size=6))
def test_flat_index_bijection(vals):
    m = m23(np.array(vals).reshape(2, 3))
    rebuilt = np.array([get_elem(m, i) for i in range(6)], dtype=np.float32).reshape(2, 3)
    assert np.array_equal(rebuilt, m)


def test_is_zero_is_one():
    assert is_zero(0.0005, 0.001)
    assert not is_one(1.002, 0.001)
    assert is_zero(-0.001, 0.001)
    assert is_zero(0.0, Tolerance(0.0))
    assert not is_zero(1e-30, Tolerance(0.0))


@given(finite32, st.floats(min_value=0, max_value=10, width=32))
def test_is_zero_sign_symmetric(x, eps):
    assert is_zero(x, eps) == is_zero(-x, eps)


def test_v_eq():
    assert v_eq((1, 2, 3), (1, 2, 3), 0.0)
    assert not v_eq((1, 2), (1, 2.0015), 0.001)
    with pytest.raises(ValueError):
        v_eq((1, 2), (1, 2, 3))


def test_v_eq_not_transitive():
    a, b, c = (0.0, 0.0), (0.0009, 0.0), (0.0018, 0.0)
    assert v_eq(a, b, 0.001) and v_eq(b, c, 0.001)
    assert not v_eq(a, c, 0.001)


@given(st.lists(finite32, min_size=3, max_size=3), st.lists(finite32, min_size=3, max_size=3),
       st.floats(min_value=0, max_value=100, width=32))
def test_v_eq_symmetric_reflexive(a, b, eps):
    assert v_eq(a, a, eps)
    assert v_eq(a, b, eps) == v_eq(b, a, eps)


def test_defaults():
    assert COORD_TOL.eps == pytest.approx(1e-3)
    assert ORT_TOL.eps == pytest.approx(1e-5)
    with pytest.raises(ValueError):
        Tolerance(-1.0)


@given(finite32)
def test_float_json_round_trip(x):
    f = np.float32(x)
    back = np.float32(json.loads(json.dumps(float(f))))
    assert back.tobytes() == f.tobytes()


def test_values_are_single_precision():
    assert v3(0.1, 0.2, 0.3).dtype == np.float32
    assert v3(0.1, 0, 0)[0] == np.float32(0.1)
