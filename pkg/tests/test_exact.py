from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperver.errors import PoleInSum
from hyperver.exact import HarmonicCache, as_rational, harmonic, mixed_harmonic, pochhammer
from hyperver.jets import LaurentJet, taylor_coefficient

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)


def test_pochhammer_empty_product_is_one():
    assert pochhammer(F(5, 2), 0) == 1
    assert isinstance(pochhammer(F(5, 2), 0), F)


def test_pochhammer_half_cubed():
    assert pochhammer(F(1, 2), 3) == F(1, 2) * F(3, 2) * F(5, 2) == F(15, 8)


def test_pochhammer_on_jet_expands_product():
    j = pochhammer(LaurentJet.variable(F(1), 2), 2)
    assert j.dense(0, 2) == [2, 3, 1]
    assert j.order == 2


def test_pochhammer_of_int_stays_exact():
    assert pochhammer(3, 4) == 3 * 4 * 5 * 6
    assert isinstance(pochhammer(3, 4), F)


def test_harmonic_examples():
    assert harmonic(0, 3, 0) == 0
    assert harmonic(2, 3, 0) == F(9, 8)
    assert harmonic(1, 3, F(-1, 4)) == F(64, 27)


def test_harmonic_pole_raises():
    with pytest.raises(PoleInSum):
        harmonic(3, 1, F(-2))


def test_harmonic_jet_pole_raises():
    # x + 1 = eps has positive valuation
    with pytest.raises(PoleInSum):
        harmonic(2, 1, LaurentJet.variable(F(-1), 2))


def test_harmonic_cache_matches_direct_and_recurrence():
    cache = HarmonicCache(2, F(1, 3))
    for j in range(1, 30):
        assert cache(j) - cache(j - 1) == 1 / (F(1, 3) + j) ** 2
        assert cache(j) == harmonic(j, 2, F(1, 3))
    assert len(cache) == 29


def test_mixed_harmonic_against_brute_force():
    n, x, y = 9, F(1, 3), F(-2, 7)
    brute = sum(1 / ((x + i) ** 2 * (y + i)) for i in range(1, n + 1))
    assert mixed_harmonic(n, ((x, 2), (y, 1))) == brute
    assert mixed_harmonic(0, ((x, 1),)) == 0


def test_as_rational_parses_strings():
    assert as_rational("3/4") == F(3, 4)
    assert as_rational(" -2 ") == F(-2)
    with pytest.raises(TypeError):
        as_rational(0.5)


@settings(max_examples=200, deadline=None)
@given(x=st.fractions(min_value=-10, max_value=10, max_denominator=50), r=st.integers(0, 20))
def test_derivative_of_pochhammer_is_harmonic_weighted(x, r):
    # skip x where some 1 + x + i vanishes
    if x.denominator == 1 and -r <= x <= -1:
        return
    j = pochhammer(LaurentJet.variable(1 + x, 2), r)
    assert taylor_coefficient(j, 1) == pochhammer(1 + x, r) * harmonic(r, 1, x)


def test_derivative_example_at_one_third():
    x = F(1, 3)
    j = pochhammer(LaurentJet.variable(1 + x, 2), 5)
    assert taylor_coefficient(j, 1) == pochhammer(F(4, 3), 5) * harmonic(5, 1, x)


@settings(max_examples=150, deadline=None)
@given(x=rationals, m=st.integers(0, 12), n=st.integers(0, 12))
def test_pochhammer_splits(x, m, n):
    assert pochhammer(x, m + n) == pochhammer(x, m) * pochhammer(x + m, n)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 40), order=st.integers(1, 4))
def test_harmonic_even_odd_split(n, order):
    odd = sum(F(1, (2 * k - 1) ** order) for k in range(1, n + 1))
    even = harmonic(n, order, 0) / 2**order
    assert harmonic(2 * n, order, 0) == odd + even
