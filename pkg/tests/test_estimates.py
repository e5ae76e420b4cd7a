import pytest

from mbqcla.estimates import (closed_form_in_place_size, closed_form_out_of_place_size,
                              clustering_ops_table, mbqc_depth, optimal_in_place_size,
                              short_size, swap_formulas, table_area, table_depth, table_size,
                              vbe_baseline)
from mbqcla.qcla import Variant


def test_swap_formulas_n10():
    f = swap_formulas(10)
    assert f["Ad"] == 40 - 4 - 6
    assert f["P"] == 16 + 12
    assert f["C"] == 20 + 18
    assert f["G_formula"] == 60
    assert f["G_text"] == 58
    assert f["total"] == 30 + 28 + 60 + 38


def test_swap_formulas_in_place_override():
    f = swap_formulas(10, Variant.IN_PLACE)
    assert f["Ad"] == 60 - 8 - 12 - 2


def test_swap_formulas_rejects_small_n():
    with pytest.raises(ValueError):
        swap_formulas(1)


def test_in_place_short_form():
    assert closed_form_in_place_size(10)["short"] == 28960 + 64 * 10 * 3 == 30880
    # floor(log2 100) = 6
    assert closed_form_in_place_size(100)["short"] == 289600 + 64 * 100 * 6 == 328000


def test_out_of_place_short_form():
    assert closed_form_out_of_place_size(10)["short"] == 15730


def test_smallest_n_in_place_positive():
    f = closed_form_in_place_size(2)
    assert f["short"] > 0 and f["table"] > 0


def test_out_of_place_table_polynomial_negative_at_n2():
    # the constant term dominates; the polynomial is a large-n fit
    assert short_size(2, Variant.OUT_OF_PLACE) > 0
    assert table_size(2, Variant.OUT_OF_PLACE) == -1843


def test_optimal_in_place_formula():
    assert optimal_in_place_size(10)["formula"] == 162 * (2 + 3 + 3 - 2) + 5420 - 395 == 5997
    assert optimal_in_place_size(2)["formula"] == 162 * (1 + 0 + 1 - 1) + 1084 - 395 == 851


def test_optimal_in_place_census_residuals():
    r = optimal_in_place_size(10)
    # 63 Toffolis, 35 CNOTs, 18 NOTs
    assert r["census_54"] == 63 * 54 + 35 * 15 + 18 * 5
    assert r["census_39"] == 63 * 39 + 35 * 15 + 18 * 5
    assert r["residual_54"] == r["census_54"] - 5997
    assert r["residual_39"] == r["census_39"] - 5997


@pytest.mark.parametrize("n,v,d", [(10, Variant.OUT_OF_PLACE, 23), (128, Variant.OUT_OF_PLACE, 39),
                                   (10, Variant.IN_PLACE, 44)])
def test_mbqc_depth_examples(n, v, d):
    assert mbqc_depth(n, v) == d


def test_table_depth_n10():
    assert table_depth(10, Variant.OUT_OF_PLACE) == 3 + 1 + 7


def test_vbe_baseline():
    assert vbe_baseline(100) == {"size": 30400, "depth": 300}
    assert vbe_baseline(1) == {"size": 304, "depth": 3}
    with pytest.raises(ValueError):
        vbe_baseline(0)
    assert 384 / mbqc_depth(128, Variant.OUT_OF_PLACE) == pytest.approx(9.8, abs=0.05)


def test_depth_dominance():
    for n in range(128, 4097):
        assert vbe_baseline(n)["depth"] / mbqc_depth(n, Variant.OUT_OF_PLACE) >= 8


@pytest.mark.parametrize("v", list(Variant))
def test_depth_monotone(v):
    d = [mbqc_depth(n, v) for n in range(2, 257)]
    assert all(a <= b for a, b in zip(d, d[1:]))


def test_report_only_comparators_are_integers():
    for v in Variant:
        assert clustering_ops_table(10, v) > 0
        assert table_area(10, v) > 0
