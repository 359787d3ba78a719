"""Elementary helpers: factorization, phi, group order, derived level data."""

from fractions import Fraction
from math import gcd

import pytest

from jbound.numtheory import (
    b_of,
    d_n,
    euler_phi,
    is_prime,
    m_of,
    prime_factors,
    sl2_order,
    xgcd,
)


def test_prime_factors():
    assert prime_factors(2) == (2,)
    assert prime_factors(12) == (2, 3)
    assert prime_factors(97) == (97,)
    assert prime_factors(2 * 3 * 5 * 7 * 11) == (2, 3, 5, 7, 11)
    assert prime_factors(1024) == (2,)


def test_is_prime():
    primes = {p for p in range(2, 200) if is_prime(p)}
    sieve = {p for p in range(2, 200)
             if all(p % q for q in range(2, p))}
    assert primes == sieve
    assert not is_prime(1)


def test_euler_phi():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert euler_phi(97) == 96
    assert euler_phi(60) == 16


def test_xgcd():
    for a, b in [(12, 18), (35, 64), (0, 5), (17, 17), (1, 999)]:
        g, x, y = xgcd(a, b)
        assert g == gcd(a, b)
        assert a * x + b * y == g


def test_sl2_order():
    assert sl2_order(2) == 6
    assert sl2_order(3) == 24
    assert sl2_order(4) == 48
    assert sl2_order(6) == 144
    assert sl2_order(5) == 120
    # multiplicativity across coprime levels
    assert sl2_order(35) == sl2_order(5) * sl2_order(7)


def test_d_n():
    assert d_n(2) == 6
    assert d_n(3) == 12
    assert d_n(5) == 60
    assert d_n(6) == 72
    assert d_n(7) == 168
    assert d_n(34) == 14688
    for n in range(3, 40):
        assert 2 * d_n(n) == sl2_order(n)


def test_m_of():
    assert m_of(2) == 6
    assert m_of(3) == 6
    assert m_of(4) == 12
    assert m_of(5) == 10
    assert m_of(8) == 24
    assert m_of(9) == 18
    assert m_of(17) == 34
    assert m_of(6) is None
    assert m_of(12) is None
    assert m_of(30) is None


def test_b_of_is_a_positive_integer():
    # B = d_N(N-6)/(12N) + 2 is 1 + genus of the principal-level curve
    assert b_of(2) == 1
    assert b_of(6) == 2
    assert b_of(7) == Fraction(4)
    for n in range(2, 10**4 + 1):
        b = b_of(n)
        assert b.denominator == 1, n
        assert b >= 1, n
