from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from bpwl.qseries import (
    TARGET_PROFILE,
    TruncatedSeries,
    TwoVarSeries,
    bp_string_fn,
    check_string_convergence,
    inv_product_expand,
    pi_w3_string_fn,
    step_profile,
    string_fn_target,
)


def ints(series: TruncatedSeries) -> list[int]:
    assert all(c.denominator == 1 for c in series.coeffs)
    return [int(c) for c in series.coeffs]


# ---- products ----------------------------------------------------------------


def test_inv_product_examples():
    assert ints(inv_product_expand(TARGET_PROFILE, 3)) == [1, 2, 6, 14]
    assert ints(inv_product_expand({}, 4)) == [1, 0, 0, 0, 0]
    assert ints(inv_product_expand(step_profile([1]), 4)) == [1, 1, 2, 3, 5]
    with pytest.raises(ValueError):
        inv_product_expand({}, -1)


@pytest.mark.parametrize("counts", [[1], [2], [2, 3, 4], [0, 1], [3, 1, 2]])
def test_inv_product_matches_enumeration(counts):
    prof = step_profile(counts)
    assert ints(inv_product_expand(prof, 12)) == oracles.colored_partitions(prof, 12)


def test_partitions_oracle_cross_check():
    assert ints(inv_product_expand(step_profile([1]), 25)) == oracles.partition_numbers(25)


def test_mapping_profile():
    # only parts of size 2, one colour: 1/(1 - q^2)
    assert ints(inv_product_expand({2: 1}, 6)) == [1, 0, 1, 0, 1, 0, 1]


# ---- series arithmetic -----------------------------------------------------------

series = st.lists(st.integers(-20, 20), min_size=1, max_size=8).map(TruncatedSeries.from_list)


@given(series, series)
def test_mul_commutes(a, b):
    assert a * b == b * a


@settings(max_examples=50)
@given(series, series, series)
def test_mul_associates_and_distributes(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_truncation_rules():
    s = TruncatedSeries.from_list([1, 2, 3])
    assert s.truncate(1).coeffs == (1, 2)
    assert (s + TruncatedSeries.from_list([1])).order == 0
    with pytest.raises(ValueError):
        s.truncate(3)
    with pytest.raises(ValueError):
        TruncatedSeries(2, (F(1),))


def test_prefactor_mismatch():
    with pytest.raises(ValueError):
        string_fn_target(0, 2) + string_fn_target(1, 2)
    assert string_fn_target(1, 2).prefactor == "q^(1 - c/24)"


def test_two_var_errors():
    s = TwoVarSeries.one(3, -1, 1)
    with pytest.raises(ValueError):
        s.divide_by_one_minus(-1, 0)
    with pytest.raises(ValueError):
        s.z_coefficient(2)
    assert TwoVarSeries.one(3, 1, 2).data == {}


def test_json_form():
    assert string_fn_target(0, 3).to_json() == ["1", "2", "6", "14"]


# ---- string functions ---------------------------------------------------------------


def test_target_examples():
    assert ints(string_fn_target(0, 0)) == [1]
    for n in range(-3, 13):
        assert string_fn_target(n, 6).coeffs == string_fn_target(0, 6).coeffs


def test_bp_string_examples():
    assert ints(bp_string_fn(0, 1)) == [1, 1]
    assert ints(bp_string_fn(-1, 0)) == [0]
    assert ints(bp_string_fn(-1, 6)) == [0, 0, 0, 1, 2, 5, 11]
    with pytest.raises(ValueError):
        bp_string_fn(0, -1)


@pytest.mark.parametrize("order", [1, 4, 8])
def test_bp_string_reaches_target(order):
    target = string_fn_target(0, order).coeffs
    for n in range(order, order + 4):
        assert bp_string_fn(n, order).coeffs == target


@pytest.mark.parametrize("n", [-3, -2, -1, 0, 1, 2, 3, 5])
def test_bp_string_matches_pbw_count(n):
    assert ints(bp_string_fn(n, 7)) == oracles.bp_string_coeffs(n, 7)


@pytest.mark.parametrize("order", [0, 3, 8])
def test_coefficients_grow_with_n(order):
    rows = [ints(bp_string_fn(n, order)) for n in range(-2, order + 2)]
    for lo, hi in zip(rows, rows[1:]):
        assert all(a <= b for a, b in zip(lo, hi))


@pytest.mark.parametrize("n", [-4, -1, 0, 2, 9])
def test_pi_w3_product_equals_target(n):
    assert pi_w3_string_fn(n, 8).coeffs == string_fn_target(n, 8).coeffs


def test_convergence_reports():
    rep = check_string_convergence(0)
    assert rep.n0 == 0 and rep.witness is None
    rep = check_string_convergence(1)
    assert rep.witness == (1, 1, 2)
    assert rep.to_json()["witness"] == {"n": 0, "q_power": 1, "bp": "1", "target": "2"}
    with pytest.raises(ValueError):
        check_string_convergence(-1)


@pytest.mark.parametrize("order", range(1, 9))
def test_convergence_starts_at_order(order):
    rep = check_string_convergence(order)
    assert rep.n0 == order and rep.probed == (0, 2 * order + 2)
