from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperver.errors import DivisionByZeroJet, OrderOutOfRange
from hyperver.jets import LaurentJet, compose, jet_combine, taylor_coefficient

eps = LaurentJet.eps


def test_division_cancels_common_factor():
    a = LaurentJet([1, 1], 1, 2)  # eps + eps^2
    b = LaurentJet([2], 1, 2)  # 2 eps
    q = jet_combine(a, b, "div")
    assert q.val == 0
    assert q.dense(0, 1) == [F(1, 2), F(1, 2)]


def test_product_truncates_at_order():
    one = LaurentJet.constant(F(1), 2)
    p = jet_combine(one + eps(2), one - eps(2), "mul")
    assert p.dense(0, 2) == [1, 0, -1]


def test_geometric_reciprocal():
    q = jet_combine(LaurentJet.constant(F(1), 2), LaurentJet.constant(F(1), 2) - eps(2), "div")
    assert q.dense(0, 2) == [1, 1, 1]


def test_add_and_sub_dispatch():
    a, b = LaurentJet([1, 2, 3], 0, 2), LaurentJet([5, 7], 0, 2)
    assert jet_combine(a, b, "add").dense(0, 2) == [6, 9, 3]
    assert jet_combine(a, b, "sub").dense(0, 2) == [-4, -5, 3]
    with pytest.raises(ValueError):
        jet_combine(a, b, "pow")


def test_division_by_zero_jet():
    with pytest.raises(DivisionByZeroJet):
        LaurentJet.constant(F(1), 2) / LaurentJet([], 0, 2)
    with pytest.raises(DivisionByZeroJet):
        LaurentJet.constant(F(1), 2) / 0


def test_taylor_coefficient_examples():
    assert taylor_coefficient(LaurentJet([2, 3, 1], 0, 2), 1) == 3
    inv = 1 / eps(2)
    assert inv.val == -1
    assert taylor_coefficient(inv, -1) == 1


def test_taylor_coefficient_out_of_range():
    j = LaurentJet([2, 3, 1], 0, 2)
    with pytest.raises(OrderOutOfRange):
        taylor_coefficient(j, 3)
    # below the valuation the coefficient is a known zero
    assert taylor_coefficient(j, -1) == 0


def test_reciprocal_tracks_known_order():
    # 1/eps of a jet known to eps^2 is known to eps^0 only
    inv = LaurentJet([1, 5, 7], 1, 3).reciprocal()
    assert inv.val == -1 and inv.order == 1
    assert (inv * LaurentJet([1, 5, 7], 1, 3)).dense(0, 1) == [1, 0]


def test_nonzero_jet_has_nonzero_lead():
    j = LaurentJet([0, 0, 3, 4], 0, 3)
    assert j.val == 2 and j.coeffs[0] == 3


def test_chop_only_zeroes_tiny_head():
    j = LaurentJet([mpmath.mpf("1e-70"), mpmath.mpf(2), mpmath.mpf(3)], 0, 2)
    c = j.chop(1, mpmath.mpf("1e-30"))
    assert c.val == 1 and c.coeffs[0] == 2
    big = LaurentJet([mpmath.mpf("0.5"), mpmath.mpf(2)], 0, 1)
    assert big.chop(1, mpmath.mpf("1e-30")).val == 0


def test_compose_matches_exponential_series():
    # exp(h) with h = eps: coefficients 1/j!
    inner = LaurentJet.variable(F(0), 4)
    out = compose(inner, [F(1), F(1), F(1, 2), F(1, 6), F(1, 24)])
    assert out.dense(0, 4) == [1, 1, F(1, 2), F(1, 6), F(1, 24)]


def test_float_jets_share_the_code_path():
    x = LaurentJet([mpmath.mpf(2), mpmath.mpf(1)], 0, 2)
    y = x * x / x
    assert abs(y.coefficient(0) - 2) < 1e-12 and abs(y.coefficient(1) - 1) < 1e-12


small = st.fractions(min_value=-5, max_value=5, max_denominator=20)


@settings(max_examples=100, deadline=None)
@given(a=st.lists(small, min_size=3, max_size=3), b=st.lists(small, min_size=3, max_size=3))
def test_product_rule(a, b):
    ja, jb = LaurentJet(a, 0, 2), LaurentJet(b, 0, 2)
    p = ja * jb
    assert taylor_coefficient(p, 1) == a[0] * b[1] + a[1] * b[0]


@settings(max_examples=100, deadline=None)
@given(a=st.lists(small, min_size=3, max_size=3), b=st.lists(small, min_size=3, max_size=3), w=st.integers(0, 2))
def test_division_inverts_multiplication(a, b, w):
    if b[0] == 0:
        return
    ja = LaurentJet(a, 0, 4)
    jb = LaurentJet(b, w, 4)
    q = (ja * jb) / jb
    # dividing by a valuation-w jet loses w orders of knowledge; a zero
    # dividend is known w orders further after the product, so it gets them back
    assert q.order == (4 - w if any(a) else 4)
    assert q.agrees_with(ja, upto=q.order)
