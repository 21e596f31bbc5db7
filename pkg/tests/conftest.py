import sys

import numpy as np
from hypothesis import strategies as st

from clusterdual.matrices import ExchangeMatrix


@st.composite
def skew_symmetrizable(draw, max_n: int = 4, max_entry: int = 3):
    """Random skew-symmetrizable B = S D^{-1} built from a skew-symmetric S and a diagonal d."""
    n = draw(st.integers(2, max_n))
    d = draw(st.lists(st.sampled_from([1, 2]), min_size=n, max_size=n))
    B = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            v = draw(st.integers(-max_entry, max_entry))
            # d_i b_ij = -d_j b_ji with b_ij = v * d_j, b_ji = -v * d_i
            B[i, j] = v * d[j]
            B[j, i] = -v * d[i]
    return ExchangeMatrix(B)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.SUMMARY:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.SUMMARY):
        terminalreporter.write_line(mod.SUMMARY[number])
