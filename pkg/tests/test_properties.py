import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterdual.presets import preset
from clusterdual.properties import (
    SourceSinkError,
    check_drm_equivalence,
    check_md_init,
    check_property_D,
    check_property_M,
    check_property_R,
    check_sigma,
    check_source_sink,
    has_signed_columns,
    has_signed_rows,
    initial_recursion_rhs,
    m_from_d,
    needs_direction,
    r_holds_along_path,
    run_check,
    search_counterexample,
    sigma_k,
    source_sink_rhs,
)
from clusterdual.seeds import paths_up_to

from conftest import skew_symmetrizable


def test_m_from_d_hand_example():
    assert m_from_d(preset("a2"), [[1, 1], [0, 1]]).tolist() == [[-1, 0], [1, 0]]


def test_sigma_hand_example():
    B = preset("a2")
    assert sigma_k(B, 1, (1, 0)) == (-1, 0)
    assert sigma_k(B, 1, (0, 1)) == (1, 1)
    assert sigma_k(B, 1, (-1, 0)) == (1, 0)
    with pytest.raises(ValueError):
        sigma_k(B, 1, (1, 2, 3))


def test_rhs_helpers_at_initial_seed():
    B = preset("a3")
    D = -np.eye(3, dtype=np.int64)
    # from t0 the mutated initial seed sees x_k as a new variable with d-vector e_k
    for k in (1, 2, 3):
        expected = -np.eye(3, dtype=np.int64)
        expected[k - 1, k - 1] = 1
        assert np.array_equal(initial_recursion_rhs(B, k, D), expected)
    assert np.array_equal(source_sink_rhs(B, 1, D)[0], [1, 0, 0])


def test_signed_columns_and_rows():
    assert has_signed_columns([[1, -1], [2, 0]])
    assert not has_signed_columns([[1, 0], [-1, 0]])
    assert has_signed_rows([[1, 2], [-1, 0]])


@pytest.mark.parametrize("name", ["a2", "a3", "b2", "g2", "markov", "atilde21"])
def test_d_r_m_hold_on_positive_presets(name):
    B = preset(name)
    for path in paths_up_to(B.n, 3):
        assert check_property_D(B, path).holds
        assert check_property_M(B, path).holds
        for k in range(1, B.n + 1):
            assert check_property_R(B, path, k).holds
            assert check_md_init(B, path, k).holds


def test_report_fields_and_replay():
    rep = check_property_M(preset("a3"), (1, 2))
    assert rep.holds and rep.first_difference() is None
    assert rep.extra["rows_holding"] == [1, 2, 3]
    again = rep.replay()
    assert again.holds and np.array_equal(again.lhs, rep.lhs)
    js = rep.to_json()
    assert js["property"] == "M" and js["path"] == [1, 2]


def test_source_sink_rejects_mixed_row():
    with pytest.raises(SourceSinkError):
        check_source_sink(preset("a3"), 2, ())
    with pytest.raises(SourceSinkError):
        check_sigma(preset("markov"), 1, ())


@pytest.mark.parametrize("name", ["a2", "a3", "b2", "g2"])
def test_source_sink_forms(name):
    B = preset(name)
    for path in paths_up_to(B.n, 4):
        for k in range(1, B.n + 1):
            if not np.asarray(B.entries[k - 1] >= 0).all() and not np.asarray(B.entries[k - 1] <= 0).all():
                continue
            rep = check_source_sink(B, k, path)
            assert rep.holds
            if rep.extra["signed_columns"]:
                assert rep.extra["forms_agree"]


def test_run_check_dispatch():
    B = preset("a2")
    assert run_check("D", B, (1,)).property == "D"
    assert run_check("sigma", B, (1,), 1).holds
    with pytest.raises(ValueError):
        run_check("R", B, (1,))
    with pytest.raises(ValueError):
        run_check("Q", B, (1,), 1)
    assert needs_direction("R") and not needs_direction("D")


def test_r_along_path_on_finite_type():
    assert all(r_holds_along_path(preset("a3"), (1, 2, 3, 1)))


def test_drm_on_annulus_with_three_points():
    s = check_drm_equivalence(preset("atilde31"), 4, root_depth=1)
    assert s.all_violated and s.laws_hold and s.consistent


def test_drm_on_finite_type():
    s = check_drm_equivalence(preset("a2"), 4)
    assert s.all_total and s.consistent


def test_search_finds_and_replays_annulus_witness():
    res = search_counterexample(preset("atilde31"), "D", depth=10, budget=100_000)
    assert res.witness is not None and not res.budget_exhausted
    rep = res.replay()
    assert not rep.holds and rep.lhs.tolist() == res.witness.lhs.tolist()
    assert res.to_json()["status"] == "violation found"


def test_search_none_found_on_finite_type():
    res = search_counterexample(preset("a2"), "D", depth=6, budget=100_000)
    assert res.witness is None
    assert res.to_json()["status"] == "none found up to bounds"


def test_search_budget():
    res = search_counterexample(preset("markov"), "R", depth=8, budget=10)
    assert res.witness is None and res.budget_exhausted and res.checked == 10


@settings(max_examples=40, deadline=None)
@given(skew_symmetrizable(max_n=3, max_entry=2), st.data())
def test_r_iff_m_row_on_random_matrices(B, data):
    path = tuple(data.draw(st.lists(st.integers(1, B.n), max_size=3)))
    rows = set(check_property_M(B, path).extra["rows_holding"])
    for k in range(1, B.n + 1):
        assert check_property_R(B, path, k).holds == (k in rows)
