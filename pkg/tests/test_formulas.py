"""Tests for the closed formulas, lower bounds and verdicts"""

import math
from fractions import Fraction

import pytest

from core.errors import BadDims
from core.formulas import (FIBER_PRODUCT_THRESHOLD, aberbach_enescu_bound, betti_formula, bound_check,
                           bound_table, duplication_formula, fiber_bound, fiber_formula,
                           hypersurface_fiber_values, ideal_idealization_formula, idealization_bound,
                           idealization_formula, idealization_rank_bound, minimal_generator_count,
                           mu_bound, multi_fiber_bound, multi_fiber_formula, order_fiber_inputs,
                           rank_formula, small_module_idealization_formula, verify, veronese_fiber_hk,
                           veronese_hk, watanabe_yoshida_bound, wy_check, zigzag_m)
from core.frobenius import HKEstimate, ModulePresentation

from conftest import polys


def euler_zigzag(n):
    """Zigzag numbers A_0..A_n from the boustrophedon triangle"""
    values = [1]
    row = [1]
    for _ in range(n):
        nxt = [0]
        for entry in reversed(row):
            nxt.append(nxt[-1] + entry)
        row = nxt
        values.append(row[-1])
    return values


# ----- fiber products -----

def test_fiber_formula_cases():
    assert fiber_formula(2, 2, 1, 1, 1, 1) == 3
    assert fiber_formula(Fraction(9, 5), Fraction(15, 8), 1, 2, 2, 0) == Fraction(147, 40)
    assert fiber_formula(Fraction(3, 2), 2, 1, 3, 2, 0) == Fraction(3, 2)


def test_fiber_formula_rejects_unordered_dimensions():
    with pytest.raises(BadDims):
        fiber_formula(1, 1, 1, 1, 2, 0)
    with pytest.raises(BadDims):
        fiber_formula(1, 1, 1, 1, 1, 2)


def test_order_fiber_inputs():
    assert order_fiber_inputs((2, 1), (3, 2)) == ((3, 2), (2, 1))
    assert order_fiber_inputs((3, 2), (2, 1)) == ((3, 2), (2, 1))


def test_hypersurface_fiber_values():
    R, S, total = hypersurface_fiber_values(4)
    assert (R, S, total) == (Fraction(9, 5), Fraction(15, 8), Fraction(147, 40))
    assert total > FIBER_PRODUCT_THRESHOLD
    # the closed form for the product agrees with summing the parts for every n
    for n in range(4, 12):
        R, S, total = hypersurface_fiber_values(n)
        assert total == fiber_formula(R, S, 1, 2, 2, 0)
    with pytest.raises(BadDims):
        hypersurface_fiber_values(3)


def test_multi_fiber_formula():
    assert multi_fiber_formula([1, 1, 1], [1, 1, 1], 1, 0) == 3
    assert multi_fiber_formula([2, 2, 2], [1, 1, 1], 1, 1) == 4
    assert multi_fiber_formula([2, Fraction(3, 2), 5], [2, 2, 1], 1, 0) == Fraction(7, 2)
    with pytest.raises(BadDims):
        multi_fiber_formula([1], [1], 1, 0)
    with pytest.raises(BadDims):
        multi_fiber_formula([1, 1], [1, 0], 1, 1)


# ----- duplications and idealizations -----

def test_duplication_formula():
    assert duplication_formula(1, 1, 0, 0) == 2
    assert duplication_formula(2, 2, 1, 2) == 3
    with pytest.raises(BadDims):
        duplication_formula(1, 1, 1, 2)


def test_idealization_formulas():
    assert idealization_formula(1, 2) == 3
    assert small_module_idealization_formula(Fraction(3, 2)) == Fraction(3, 2)
    assert ideal_idealization_formula(Fraction(3, 2)) == 3
    assert betti_formula([1, 1], 1) == 1
    assert betti_formula([2], Fraction(1, 2)) == Fraction(3, 2)
    assert rank_formula(2, 1) == 3


def test_mu_bound():
    assert mu_bound(1, 1, 2)
    assert not mu_bound(1, 1, 3)
    assert not mu_bound(2, 2, 1)
    with pytest.raises(BadDims):
        mu_bound(-1, 1, 1)


def test_minimal_generator_count(line):
    x, one = polys(line, "x", "1")
    assert minimal_generator_count(ModulePresentation(line, 1, ((x,),))) == 1
    assert minimal_generator_count(ModulePresentation(line, 1, ((one,),))) == 0
    assert minimal_generator_count(ModulePresentation.free(line, 2)) == 2
    # two generators tied together by a unit relation
    assert minimal_generator_count(ModulePresentation(line, 2, ((one,), (x,)))) == 1


def test_veronese():
    assert veronese_hk(1, 3) == 1
    assert veronese_hk(2, 2) == Fraction(3, 2)
    assert veronese_hk(3, 2) == 2
    assert veronese_fiber_hk(2, 2, 2) == 3
    with pytest.raises(BadDims):
        veronese_hk(0, 2)


# ----- lower bounds -----

def test_aberbach_enescu_bound():
    assert aberbach_enescu_bound(2) == Fraction(19, 18)
    assert aberbach_enescu_bound(3) == 1 + Fraction(1, 6591)
    with pytest.raises(BadDims):
        aberbach_enescu_bound(1)


def test_fiber_bounds():
    assert fiber_bound("both-regular", 3) == 2
    assert fiber_bound("one-nonregular", 3) == 2 + Fraction(1, 6591)
    assert fiber_bound("both-nonregular", 3) == Fraction(13184, 6591)
    assert fiber_bound("strict-dims", 2) == Fraction(19, 18)
    with pytest.raises(ValueError):
        fiber_bound("sideways", 2)


def test_multi_fiber_and_idealization_bounds():
    assert multi_fiber_bound(2, 1, 2, 1, "equal-dimT") == Fraction(10, 9)
    assert multi_fiber_bound(3, 2, 2, 1, "strict") == Fraction(19, 9)
    with pytest.raises(BadDims):
        multi_fiber_bound(2, 3, 2, 1, "strict")
    with pytest.raises(ValueError):
        multi_fiber_bound(2, 1, 2, 1, "other")
    assert idealization_bound(1, 2) == Fraction(19, 9)
    assert idealization_rank_bound(0, 2) == Fraction(19, 18)


def test_zigzag_small_values():
    assert [zigzag_m(d) for d in range(1, 5)] == [1, Fraction(1, 2), Fraction(1, 3), Fraction(5, 24)]
    assert watanabe_yoshida_bound(3) == Fraction(4, 3)


def test_zigzag_matches_boustrophedon():
    zigzag = euler_zigzag(16)
    for d in range(1, 17):
        assert zigzag_m(d) == Fraction(zigzag[d], math.factorial(d))


@pytest.mark.parametrize("d", [0, 65])
def test_zigzag_range(d):
    with pytest.raises(BadDims):
        zigzag_m(d)


def test_bound_table_rows():
    table = dict(bound_table(2))
    assert len(bound_table(2)) == 8
    assert table["aberbach-enescu"] == Fraction(19, 18)
    assert table["watanabe-yoshida 1+m_d"] == Fraction(3, 2)


# ----- verdicts -----

def test_verify_tolerance():
    assert verify(2, Fraction(53, 27), Fraction(1, 20)).passed
    verdict = verify(2, Fraction(53, 27), 0)
    assert not verdict.passed
    assert verdict.absolute_gap == Fraction(1, 27)
    assert verdict.relative_gap == Fraction(1, 54)
    # predictions below 1 are measured absolutely
    assert verify(Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)).passed
    with pytest.raises(ValueError):
        verify(1, 1, -1)


def test_verify_keeps_estimate():
    estimate = HKEstimate(Fraction(2), "two-point-fit", (), Fraction(0), Fraction(-1))
    verdict = verify(2, estimate, 0, "nodal curve")
    assert verdict.passed
    assert verdict.estimated is estimate
    assert verdict.citation == "nodal curve"


def test_bound_check_is_one_sided():
    assert bound_check(Fraction(8, 3), 3).passed
    below = bound_check(Fraction(8, 3), 2)
    assert not below.passed
    assert below.relative_gap == Fraction(1, 4)


def test_wy_check():
    assert wy_check(Fraction(4, 3), 3).passed
    assert not wy_check(Fraction(5, 4), 3).passed
    assert wy_check(1, 2).note
    with pytest.raises(BadDims):
        wy_check(2, 1)


def test_wy_check_against_quadric():
    quadric = HKEstimate(Fraction(3, 2), "two-point-fit", ())
    assert not wy_check(Fraction(7, 5), 3, quadric, Fraction(1, 100)).passed
    assert wy_check(Fraction(3, 2), 3, quadric, Fraction(1, 100)).passed
