from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperver.errors import DenominatorDivisibleByP, NotOneModFour, NotPrime
from hyperver.padic import ModPSquare, embed_rational, gamma_p, he_congruence_check, he_lhs, he_rhs, is_prime

PRIMES_1_MOD_4 = [p for p in range(5, 200) if is_prime(p) and p % 4 == 1]


def test_is_prime_small_table():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_embed_examples():
    assert embed_rational(F(1, 2), 5).r == 13
    assert embed_rational(F(3), 5).r == 3
    with pytest.raises(DenominatorDivisibleByP):
        embed_rational(F(1, 5), 5)


def test_gamma_p_examples():
    for p in (5, 7, 13):
        assert gamma_p(F(1), p).r == p * p - 1
        assert gamma_p(F(2), p).r == 1
    ratio = gamma_p(F(4), 5) * gamma_p(F(3), 5).inverse()
    assert ratio == embed_rational(F(-3), 5)


def test_gamma_p_zero_is_one():
    assert gamma_p(F(0), 13).r == 1


@pytest.mark.parametrize("p", [5, 13, 17])
def test_gamma_p_functional_equation(p):
    m = p * p
    prev = gamma_p(F(0), p)
    for x in range(0, m - 1):
        nxt = gamma_p(F(x + 1), p)
        expected = ModPSquare(p, -x) * prev if x % p else ModPSquare(p, -1) * prev
        assert nxt == expected, x
        prev = nxt


@pytest.mark.parametrize("p", [5, 13, 17, 29, 7, 11, 19])
def test_gamma_p_half_squared(p):
    # Gamma_p(1/2)^2 = (-1)^((p+1)/2) holds in Z_p, hence mod p^2
    assert gamma_p(F(1, 2), p) ** 2 == ModPSquare(p, (-1) ** ((p + 1) // 2))


@pytest.mark.parametrize("p", [5, 13, 17, 29])
@pytest.mark.parametrize("x", [F(1, 4), F(1, 3), F(2, 7)])
def test_gamma_p_reflection(p, x):
    ell = (x.numerator * pow(x.denominator, -1, p)) % p or p
    assert gamma_p(x, p) * gamma_p(1 - x, p) == ModPSquare(p, (-1) ** ell)


@settings(max_examples=100, deadline=None)
@given(
    a=st.fractions(min_value=-50, max_value=50, max_denominator=60),
    b=st.fractions(min_value=-50, max_value=50, max_denominator=60),
    p=st.sampled_from([5, 13, 17, 29]),
)
def test_embedding_is_ring_homomorphism(a, b, p):
    if a.denominator % p == 0 or b.denominator % p == 0:
        return
    ea, eb = embed_rational(a, p), embed_rational(b, p)
    assert embed_rational(a * b, p) == ea * eb
    assert embed_rational(a + b, p) == ea + eb


def test_inverse_requires_unit():
    with pytest.raises(DenominatorDivisibleByP):
        ModPSquare(5, 10).inverse()


@pytest.mark.parametrize("p", PRIMES_1_MOD_4)
def test_he_congruence_instances(p):
    rep = he_congruence_check(p)
    assert rep.passed
    assert rep.lhs.mod_p() == rep.rhs.mod_p()


def _poch(x, n):
    out = F(1)
    for j in range(n):
        out *= x + j
    return out


def test_he_lhs_brute_force():
    p = 13
    total = sum(
        F(6 * k + 1, 4**k) * _poch(F(1, 2), k) ** 3 * _poch(F(1, 4), k) / F(factorial(k)) ** 4
        for k in range((p - 1) // 2 + 1)
    )
    assert he_lhs(p) == embed_rational(total, p)


def test_he_congruence_rejections():
    for p in (7, 11, 3):
        with pytest.raises(NotOneModFour):
            he_congruence_check(p)
    with pytest.raises(NotPrime):
        he_congruence_check(21)
    with pytest.raises(NotPrime):
        he_congruence_check(25)


def test_he_congruence_fails_with_flipped_sign():
    # the sign convention matters: the opposite sign is rejected
    for p in (5, 13):
        assert he_lhs(p) != ModPSquare(p, -1) * he_rhs(p)
