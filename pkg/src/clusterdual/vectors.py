"""Denominator (d-) and highest-power (m-) vectors of a seed.

Column ``j`` of a D-matrix is the d-vector of the j-th cluster variable: the
negated vector of lowest exponents in its Laurent expansion.  Column ``j`` of
an M-matrix holds the highest exponents.  Both are computed two ways: read off
the Laurent expansion, or folded along the path with the tropical
final-seed recursion.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import _kernels
from .laurent import LaurentPolynomial, exact_div
from .matrices import ExchangeMatrix, _check_index, _freeze, guard_product, mutate
from .seeds import Seed, path_from_neighbor, reduce_path, seed_at


def d_matrix_direct(seed: Seed) -> np.ndarray:
    cols = [[-e for e in x.min_exponents()] for x in seed.cluster]
    return _freeze(np.array(cols, dtype=object).T.astype(np.int64))


def m_matrix_direct(seed: Seed) -> np.ndarray:
    cols = [list(x.max_exponents()) for x in seed.cluster]
    return _freeze(np.array(cols, dtype=object).T.astype(np.int64))


def tropical_step(X: np.ndarray, B: ExchangeMatrix, k: int) -> np.ndarray:
    """One step ``X J_k + max(X [B^{.k}]_+, X [(-B)^{.k}]_+)`` of the final-seed recursion."""
    i = _check_index(k, B.n)
    guard_product(X, B.entries)
    return _freeze(_kernels.tropical_column_step(np.ascontiguousarray(X, dtype=np.int64), B.entries, i))


def _fold(B0: ExchangeMatrix, path: Sequence[int], start: np.ndarray) -> np.ndarray:
    X = start
    B = B0
    for k in reduce_path(path):
        X = tropical_step(X, B, k)
        B = mutate(B, k)
    return _freeze(X)


def d_matrix_recursive(B0: ExchangeMatrix, path: Sequence[int]) -> np.ndarray:
    return _fold(B0, path, -np.eye(B0.n, dtype=np.int64))


def m_matrix_recursive(B0: ExchangeMatrix, path: Sequence[int]) -> np.ndarray:
    return _fold(B0, path, np.eye(B0.n, dtype=np.int64))


def d_after_initial_mutation(B0: ExchangeMatrix, k: int, path: Sequence[int]) -> np.ndarray:
    """D-matrix at the end of ``path`` measured from the initial seed mutated at ``k``.

    Row ``k`` of the old D-matrix is replaced by row ``k`` of the M-matrix; all
    other rows are unchanged.
    """
    i = _check_index(k, B0.n)
    D = d_matrix_recursive(B0, path).copy()
    D[i, :] = m_matrix_recursive(B0, path)[i, :]
    return _freeze(D)


def d_after_initial_mutation_direct(B0: ExchangeMatrix, k: int, path: Sequence[int]) -> np.ndarray:
    """Oracle for :func:`d_after_initial_mutation`: expand the same tree vertex from ``mu_k(B0)``."""
    _check_index(k, B0.n)
    return d_matrix_direct(seed_at(mutate(B0, k), path_from_neighbor(k, reduce_path(path))))


def d_matrix_at(B0: ExchangeMatrix, path: Sequence[int]) -> np.ndarray:
    """D-matrix read off the Laurent expansion at ``path``."""
    return d_matrix_direct(seed_at(B0, path))


def m_matrix_at(B0: ExchangeMatrix, path: Sequence[int]) -> np.ndarray:
    return m_matrix_direct(seed_at(B0, path))


# ---------------------------------------------------------------------------
# extreme forms
#
# For a fixed variable x_i, every nonzero Laurent polynomial f factors as
# x_i^v * (c + higher powers of x_i) with c free of x_i.  The pair (v, c) is
# multiplicative and survives exact division, so it can be pushed through the
# exchange relation without expanding the cluster variables.  Sums keep the
# form of the extreme summand; equal exponents add coefficients, and a
# cancellation there means deeper terms would be needed, which is reported
# as an error rather than guessed.


class FormCancellation(ArithmeticError):
    """Extreme forms of the two exchange monomials cancel."""


def _form_of_variable(n: int, i: int, j: int) -> tuple[int, LaurentPolynomial]:
    if j == i:
        return 1, LaurentPolynomial.constant(n, 1)
    return 0, LaurentPolynomial.variable(n, j + 1)


def _extreme_forms(B0: ExchangeMatrix, path: Sequence[int], i: int, highest: bool):
    n = B0.n
    forms = [_form_of_variable(n, i, j) for j in range(n)]
    B = B0
    one = (0, LaurentPolynomial.constant(n, 1))
    for k in reduce_path(path):
        col = B.entries[:, k - 1]
        pos, neg = one, one
        for l in range(n):
            b = int(col[l])
            if b:
                v, c = forms[l]
                term = (abs(b) * v, c ** abs(b))
                if b > 0:
                    pos = (pos[0] + term[0], pos[1] * term[1])
                else:
                    neg = (neg[0] + term[0], neg[1] * term[1])
        if pos[0] == neg[0]:
            c = pos[1] + neg[1]
            if not c:
                raise FormCancellation(f"extreme forms cancel in direction {k} for variable x{i + 1}")
            total = (pos[0], c)
        elif (pos[0] > neg[0]) == highest:
            total = pos
        else:
            total = neg
        vk, ck = forms[k - 1]
        forms[k - 1] = (total[0] - vk, exact_div(total[1], ck))
        B = mutate(B, k)
    return forms


def d_matrix_forms(B0: ExchangeMatrix, path: Sequence[int]) -> np.ndarray:
    """D-matrix from lowest forms; exact, and far cheaper than full expansion in rank two."""
    rows = [[-v for v, _ in _extreme_forms(B0, path, i, highest=False)] for i in range(B0.n)]
    return _freeze(np.array(rows, dtype=object).astype(np.int64))


def m_matrix_forms(B0: ExchangeMatrix, path: Sequence[int]) -> np.ndarray:
    """M-matrix from highest forms."""
    rows = [[v for v, _ in _extreme_forms(B0, path, i, highest=True)] for i in range(B0.n)]
    return _freeze(np.array(rows, dtype=object).astype(np.int64))
