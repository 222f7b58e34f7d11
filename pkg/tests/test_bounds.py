import math

import pytest
from hypothesis import given, settings, strategies as st

from waring import bounds, exponents
from waring.acceptance import GPLUS_TABLE, H_TABLE, TABLE2, matches_rounded_up
from waring.errors import DataError, PreconditionError


@pytest.fixture(scope="module")
def table():
    return exponents.load_exponent_table()


def test_g0_table_examples(table):
    for k, row in TABLE2.items():
        value, v = bounds.g0(k, "table", table)
        assert v == row[3]
        assert matches_rounded_up(value, row[5])


def test_g0_formula_upper_envelope():
    for k in (20, 30, 60, 120):
        value, v = bounds.g0(k)
        assert v % 2 == 0
        assert value <= k * (math.log(k) + 2 + math.log(9.027901))


def test_g_upper_and_gplus_columns(table):
    for k, h, gp in zip(range(14, 21), H_TABLE, GPLUS_TABLE):
        assert bounds.g_upper(k, "table", table) == h
        assert bounds.gplus_bound(k, h) == gp
    assert bounds.gplus_exact(16) == 64
    assert bounds.gplus_exact(14) is None


def test_g_upper_power_of_two_floor():
    assert bounds.g_upper(4) >= 16
    assert bounds.g_upper(8) >= 32
    for k in range(4, 40):
        assert bounds.g_upper(k) >= 2 * k + 3


def test_thm11_examples():
    assert bounds.thm11_bound(20) == 144
    assert bounds.thm11_bound(1) == 5
    assert bounds.thm11_bound(14) == 96
    assert bounds.g_upper(20) == 144
    with pytest.raises(PreconditionError):
        bounds.thm11_bound(0)


def test_thm11_dominates_table_bounds(table):
    for k in range(14, 21):
        assert bounds.thm11_bound(k) >= bounds.g_upper(k, "table", table)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10 ** 6))
def test_thm11_nondecreasing(k):
    assert bounds.thm11_bound(k + 1) >= bounds.thm11_bound(k)


def test_thm12_small_k():
    c = exponents.constants()
    assert bounds.thm12_value(1) == pytest.approx(c.C1 + c.C2, abs=1e-12)
    v = bounds.thm12_value(10)
    assert bounds.thm12_integer_bound(10) < v <= bounds.thm12_integer_bound(10) + 1


def test_thm12_crossover():
    # thm12 sits strictly below the thm11 expression from here on
    def below(k):
        return bounds.thm12_value(k) < k * (math.log(k) + bounds.THM11_CONSTANT)
    assert not below(23138)
    assert all(below(k) for k in (23139, 23140, 30000, 10 ** 5, 10 ** 7))
    assert not any(below(k) for k in (2, 100, 1000, 23100))


def test_gplus_examples():
    assert bounds.gplus_bound(5, 89) == 45
    assert bounds.gplus_bound(5, 90) == 46
    with pytest.raises(PreconditionError):
        bounds.gplus_bound(5, 0)


def test_best_known_examples(table):
    lit = bounds.load_literature()
    assert bounds.best_known(3, table, lit) == lit[3]
    assert bounds.best_known(7, table, lit) == lit[7]
    assert bounds.best_known(14, table, lit) == (89, bounds.TABLE_SOURCE)
    value, _ = bounds.best_known(1000, table, lit)
    assert value == bounds.thm11_bound(1000)


def test_literature_parse_errors(tmp_path):
    p = tmp_path / "lit.csv"
    p.write_text("k,bound,source\n5,x,foo\n")
    with pytest.raises(DataError, match=":2:"):
        bounds.load_literature(p)
    with pytest.raises(DataError):
        bounds.load_literature(tmp_path / "missing.csv")


def test_nu_at_bound(table):
    for k in range(14, 21):
        s, d = bounds.minor_arc_exponent_at_bound(k, table)
        assert s == H_TABLE[k - 14] and d < 0
        assert 0 < bounds.nu(d, k) <= 1 / (6 * k)
    with pytest.raises(PreconditionError):
        bounds.nu(0.0, 14)


def test_report(table):
    reps = bounds.table_report(range(14, 21), "table", table)
    text = bounds.format_report_csv(reps)
    lines = text.splitlines()
    assert lines[0] == "k,G0,v,H,thm11,thm12,Gplus,best,source"
    assert len(lines) == 8
    assert lines[1].startswith("14,88.48")
    assert reps[2].gplus_exact == 64
    with pytest.raises(DataError, match="21"):
        bounds.table_report([20, 21], "table", table)
    formula = bounds.bound_report(30, "formula")
    assert formula.thm62_bound <= formula.thm11_bound
