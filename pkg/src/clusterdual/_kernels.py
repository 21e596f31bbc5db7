"""Integer-matrix kernels behind the tropical recursions.

Every kernel exists twice: a numba ``@njit`` loop version and a vectorised
numpy version.  The numba path is used when numba imports cleanly and the
environment variable ``CLUSTERDUAL_DISABLE_NUMBA`` is unset (or ``0``).
Both paths take and return C-contiguous ``int64`` arrays and use 0-based
direction indices; callers are responsible for overflow guarding.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("CLUSTERDUAL_DISABLE_NUMBA", "0") not in ("", "0", "false", "False")

try:
    if _DISABLED:
        raise ImportError("numba disabled by CLUSTERDUAL_DISABLE_NUMBA")
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False


# ---------------------------------------------------------------------------
# numpy reference path


def np_mutate_matrix(B, k):
    col = B[:, k]
    row = B[k, :]
    # sign(b_ik) * [b_ik * b_kj]_+ == ([b_ik]_+ [b_kj]_+) - ([-b_ik]_+ [-b_kj]_+)
    out = B + np.outer(np.maximum(col, 0), np.maximum(row, 0)) - np.outer(
        np.maximum(-col, 0), np.maximum(-row, 0)
    )
    out[k, :] = -B[k, :]
    out[:, k] = -B[:, k]
    return out


def np_tropical_column_step(X, B, k):
    pos = X @ np.maximum(B[:, k], 0)
    neg = X @ np.maximum(-B[:, k], 0)
    out = X.copy()
    out[:, k] = -X[:, k] + np.maximum(pos, neg)
    return out


def np_initial_row_step(D, B0, k):
    pos = np.maximum(B0[k, :], 0) @ D
    neg = np.maximum(-B0[k, :], 0) @ D
    out = D.copy()
    out[k, :] = -D[k, :] + np.maximum(pos, neg)
    return out


def np_md_rhs(D, B0):
    return -D + np.maximum(np.maximum(B0, 0) @ D, np.maximum(-B0, 0) @ D)


def np_source_sink_rhs(D, B0, k):
    out = D.copy()
    out[k, :] = -D[k, :] + np.maximum(np.abs(B0[k, :]) @ D, 0)
    return out


def np_sigma(B0, k, V):
    out = V.copy()
    out[k, :] = -V[k, :] + np.abs(B0[k, :]) @ np.maximum(V, 0)
    return out


# ---------------------------------------------------------------------------
# numba path

if NUMBA_AVAILABLE:

    @njit(cache=True)
    def nb_mutate_matrix(B, k):
        n = B.shape[0]
        out = np.empty_like(B)
        for i in range(n):
            bik = B[i, k]
            for j in range(n):
                if i == k or j == k:
                    out[i, j] = -B[i, j]
                else:
                    prod = bik * B[k, j]
                    if prod > 0:
                        if bik > 0:
                            out[i, j] = B[i, j] + prod
                        else:
                            out[i, j] = B[i, j] - prod
                    else:
                        out[i, j] = B[i, j]
        return out

    @njit(cache=True)
    def nb_tropical_column_step(X, B, k):
        n = X.shape[0]
        out = X.copy()
        for i in range(n):
            pos = 0
            neg = 0
            for l in range(n):
                b = B[l, k]
                if b > 0:
                    pos += X[i, l] * b
                elif b < 0:
                    neg -= X[i, l] * b
            out[i, k] = -X[i, k] + (pos if pos > neg else neg)
        return out

    @njit(cache=True)
    def nb_initial_row_step(D, B0, k):
        n = D.shape[0]
        out = D.copy()
        for j in range(n):
            pos = 0
            neg = 0
            for l in range(n):
                b = B0[k, l]
                if b > 0:
                    pos += b * D[l, j]
                elif b < 0:
                    neg -= b * D[l, j]
            out[k, j] = -D[k, j] + (pos if pos > neg else neg)
        return out

    @njit(cache=True)
    def nb_md_rhs(D, B0):
        n = D.shape[0]
        out = np.empty_like(D)
        for i in range(n):
            for j in range(n):
                pos = 0
                neg = 0
                for l in range(n):
                    b = B0[i, l]
                    if b > 0:
                        pos += b * D[l, j]
                    elif b < 0:
                        neg -= b * D[l, j]
                out[i, j] = -D[i, j] + (pos if pos > neg else neg)
        return out

    @njit(cache=True)
    def nb_source_sink_rhs(D, B0, k):
        n = D.shape[0]
        out = D.copy()
        for j in range(n):
            acc = 0
            for l in range(n):
                acc += abs(B0[k, l]) * D[l, j]
            out[k, j] = -D[k, j] + (acc if acc > 0 else 0)
        return out

    @njit(cache=True)
    def nb_sigma(B0, k, V):
        n = V.shape[0]
        out = V.copy()
        for j in range(V.shape[1]):
            acc = 0
            for l in range(n):
                v = V[l, j]
                if v > 0:
                    acc += abs(B0[k, l]) * v
            out[k, j] = -V[k, j] + acc
        return out

    mutate_matrix = nb_mutate_matrix
    tropical_column_step = nb_tropical_column_step
    initial_row_step = nb_initial_row_step
    md_rhs = nb_md_rhs
    source_sink_rhs = nb_source_sink_rhs
    sigma = nb_sigma
else:
    mutate_matrix = np_mutate_matrix
    tropical_column_step = np_tropical_column_step
    initial_row_step = np_initial_row_step
    md_rhs = np_md_rhs
    source_sink_rhs = np_source_sink_rhs
    sigma = np_sigma


BACKEND = "numba" if NUMBA_AVAILABLE else "numpy"
