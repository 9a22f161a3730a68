import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from tightclose import _kernels as K

leads_st = st.lists(st.tuples(*[st.integers(0, 5)] * 3), min_size=0, max_size=6)


@settings(max_examples=60, deadline=None)
@given(leads=leads_st, bounds=st.tuples(*[st.integers(1, 7)] * 3))
def test_box_count_numba_equals_numpy(leads, bounds):
    arr = K.as_lead_array(leads, 3)
    a = K.count_standard_box(arr, bounds, use_numba=True)
    b = K.count_standard_box(arr, bounds, use_numba=False)
    brute = sum(
        1 for i in range(bounds[0]) for j in range(bounds[1]) for k in range(bounds[2])
        if not any(g[0] <= i and g[1] <= j and g[2] <= k for g in leads)
    )
    assert a == b == brute


@settings(max_examples=60, deadline=None)
@given(leads=leads_st, degree=st.integers(0, 8))
def test_degree_count_numba_equals_numpy(leads, degree):
    arr = K.as_lead_array(leads, 3)
    a = K.count_standard_degree(arr, 3, degree, use_numba=True)
    b = K.count_standard_degree(arr, 3, degree, use_numba=False)
    brute = sum(
        1 for i in range(degree + 1) for j in range(degree + 1 - i)
        if not any(g[0] <= i and g[1] <= j and g[2] <= degree - i - j for g in leads)
    )
    assert a == b == brute


@pytest.mark.parametrize("p", [2, 5, 101])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_rank_numba_numpy_sympy(p, data):
    rows = data.draw(st.integers(1, 6))
    cols = data.draw(st.integers(1, 6))
    m = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
                           min_size=rows, max_size=rows))
    arr = np.array(m, dtype=np.int64)
    oracle = DomainMatrix([[GF(p)(v) for v in row] for row in m], (rows, cols), GF(p)).rank()
    assert K.rank_mod_p(arr, p, use_numba=True) == K.rank_mod_p(arr, p, use_numba=False) == oracle


def test_empty_inputs():
    assert K.rank_mod_p(np.zeros((0, 3)), 5) == 0
    assert K.count_standard_box(K.as_lead_array([], 2), [0, 3]) == 0
    assert K.count_standard_degree(K.as_lead_array([], 2), 2, -1) == 0


def test_env_flag_selects_fallback(monkeypatch):
    import importlib

    monkeypatch.setenv("TIGHTCLOSE_DISABLE_NUMBA", "1")
    mod = importlib.reload(K)
    try:
        assert mod.USE_NUMBA is False
    finally:
        monkeypatch.delenv("TIGHTCLOSE_DISABLE_NUMBA")
        importlib.reload(K)
