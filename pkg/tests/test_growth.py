"""Growth and dilatation exponents: frozen values and the scaling law."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rht.corpus import load_presentation
from rht.errors import DegreeRangeError, HomogeneityError
from rht.growth import CONDITIONAL_NOTE, dil_exponent, growth_exponent, growth_report
from rht.weights import WeightAssignment, find_weights


def test_product_model_exponents():
    p = load_presentation("s2xs3")
    w = WeightAssignment({"x": 1, "y": 2, "u": 1})
    assert growth_exponent(p, w) == Fraction(3, 2)
    assert dil_exponent(p, w) == Fraction(2, 3)


def test_two_sphere_growth_filters_out_of_range_generator():
    # y has degree 3 > formal dimension 2, so only x contributes
    p = load_presentation("s2")
    w = WeightAssignment({"x": 1, "y": 2})
    assert growth_exponent(p, w) == Fraction(2)
    assert dil_exponent(p, w) == Fraction(1, 2)


def test_cp3_growth_filters_top_generator():
    p = load_presentation("cp3")
    w = find_weights(p).assignment
    # deg y = 7 > 6, filtered; only x with 2/1
    assert growth_exponent(p, w) == Fraction(2)


def test_stage_shifted_weights_slow_the_growth():
    p = load_presentation("s2xs3")
    w = WeightAssignment({"x": 2, "y": 4, "u": 3})
    # ratios degree/weight are {1, 3/4, 1}; the slowest generator wins
    assert growth_exponent(p, w) == Fraction(3, 4)
    assert dil_exponent(p, w) == Fraction(4, 3)


@given(st.integers(1, 7))
def test_scaling_law(k):
    p = load_presentation("s2xs3")
    w = WeightAssignment({"x": 1, "y": 2, "u": 1})
    kw = WeightAssignment({n: k * v for n, v in w.weights.items()})
    assert growth_exponent(p, kw) == growth_exponent(p, w) / k
    assert dil_exponent(p, kw) == dil_exponent(p, w) * k


def test_report_carries_the_conditional_note():
    p = load_presentation("s2xs3")
    rep = growth_report(p, find_weights(p).assignment)
    assert rep.note == CONDITIONAL_NOTE
    d = rep.to_json_dict()
    assert d["growth_exponent"] == "3/2"
    assert d["dil_exponent"] == "2/3"
    assert set(d["ratios"]) == {"x", "y", "u"}


def test_missing_formal_dimension_errors():
    p = load_presentation("infeasible-synthetic")
    w = WeightAssignment({g.name: 1 for g in p.generators})
    with pytest.raises(DegreeRangeError):
        growth_exponent(p, w)


def test_invalid_weights_error():
    p = load_presentation("s2")
    with pytest.raises(HomogeneityError):
        growth_exponent(p, WeightAssignment({"x": 1, "y": 7}))


def test_exponents_are_positive():
    for key in ("s2", "s3", "s4", "s5", "s6", "s7", "cp2", "cp3", "cp4", "s2xs3", "s2-wedge-s4"):
        p = load_presentation(key)
        w = find_weights(p).assignment
        assert growth_exponent(p, w) > 0
        assert dil_exponent(p, w) > 0
