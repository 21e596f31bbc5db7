import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from clusterdual import _kernels

from conftest import skew_symmetrizable


def _nb(name):
    if not _kernels.NUMBA_AVAILABLE:
        pytest.skip("numba not available")
    return getattr(_kernels, "nb_" + name)


@settings(max_examples=100, deadline=None)
@given(skew_symmetrizable(max_n=5), st.data())
def test_backends_agree(B, data):
    n = B.n
    k = data.draw(st.integers(0, n - 1))
    X = data.draw(arrays(np.int64, (n, n), elements=st.integers(-20, 20)))
    Bm = np.ascontiguousarray(B.entries)
    cases = [
        ("mutate_matrix", (Bm, k)),
        ("tropical_column_step", (X, Bm, k)),
        ("initial_row_step", (X, Bm, k)),
        ("md_rhs", (X, Bm)),
        ("source_sink_rhs", (X, Bm, k)),
        ("sigma", (Bm, k, X)),
    ]
    for name, args in cases:
        expected = getattr(_kernels, "np_" + name)(*args)
        assert np.array_equal(_nb(name)(*args), expected), name
        assert np.array_equal(getattr(_kernels, name)(*args), expected), name


def test_env_flag_selects_numpy():
    code = "from clusterdual import _kernels; print(_kernels.BACKEND)"
    env = dict(os.environ, CLUSTERDUAL_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    env["CLUSTERDUAL_DISABLE_NUMBA"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == ("numba" if _kernels.NUMBA_AVAILABLE else "numpy")
