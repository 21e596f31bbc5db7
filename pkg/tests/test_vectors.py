import numpy as np
import pytest

from clusterdual.matrices import ExchangeMatrix
from clusterdual.presets import preset
from clusterdual.seeds import paths_up_to, seed_at
from clusterdual.vectors import (
    FormCancellation,
    d_after_initial_mutation,
    d_after_initial_mutation_direct,
    d_matrix_at,
    d_matrix_direct,
    d_matrix_forms,
    d_matrix_recursive,
    m_matrix_at,
    m_matrix_forms,
    m_matrix_recursive,
    tropical_step,
)


def test_a2_hand_computed():
    B = preset("a2")
    assert d_matrix_at(B, (1, 2)).tolist() == [[1, 1], [0, 1]]
    assert m_matrix_at(B, (1, 2)).tolist() == [[-1, 0], [1, 0]]


def test_rank2_affine_sequence():
    B = ExchangeMatrix([[0, 2], [-2, 0]])
    expected = {3: [[3, 2], [2, 1]], 4: [[3, 4], [2, 3]], 6: [[5, 6], [4, 5]]}
    for k, D in expected.items():
        path = tuple(1 + i % 2 for i in range(k))
        assert d_matrix_recursive(B, path).tolist() == D
        assert d_matrix_at(B, path).tolist() == D


@pytest.mark.parametrize("name, depth", [("b2", 5), ("dtilde4", 3), ("atilde31", 3)])
def test_recursion_matches_expansion(name, depth):
    B = preset(name)
    for path in paths_up_to(B.n, depth):
        s = seed_at(B, path)
        assert np.array_equal(d_matrix_recursive(B, path), d_matrix_direct(s)), path
        assert np.array_equal(m_matrix_recursive(B, path), m_matrix_at(B, path)), path


@pytest.mark.parametrize("name, depth", [("a3", 4), ("b2", 5), ("atilde21", 4), ("markov", 3)])
def test_forms_match_expansion(name, depth):
    B = preset(name)
    for path in paths_up_to(B.n, depth):
        try:
            assert np.array_equal(d_matrix_forms(B, path), d_matrix_at(B, path)), path
            assert np.array_equal(m_matrix_forms(B, path), m_matrix_at(B, path)), path
        except FormCancellation:
            pass


@pytest.mark.parametrize("name", ["a3", "g2", "atilde21"])
def test_row_replacement_matches_direct(name):
    B = preset(name)
    for path in paths_up_to(B.n, 4):
        for k in range(1, B.n + 1):
            assert np.array_equal(d_after_initial_mutation(B, k, path), d_after_initial_mutation_direct(B, k, path))


def test_results_are_read_only():
    D = d_matrix_recursive(preset("a2"), (1,))
    with pytest.raises(ValueError):
        D[0, 0] = 7


def test_tropical_step_validates_direction():
    with pytest.raises(IndexError):
        tropical_step(np.eye(2, dtype=np.int64), preset("a2"), 3)


def test_overflow_guard():
    B = ExchangeMatrix([[0, 2**40], [-(2**40), 0]])
    with pytest.raises(OverflowError):
        d_matrix_recursive(B, (1, 2, 1, 2))
