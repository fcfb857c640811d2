import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from corelate.errors import NotAUnit, ZeroDenominator, ZeroInverse
from corelate.exactnum import (
    GF,
    QQ,
    ZZ,
    ext_gcd,
    is_prime,
    parse_ring,
    rational_normalize,
    scalar_inv,
)


def test_ext_gcd_with_zero():
    assert ext_gcd(0, 5) == (5, 0, 1)
    assert ext_gcd(7, 0) == (7, 1, 0)
    assert ext_gcd(0, 0) == (0, 1, 0)


def test_ext_gcd_bezout_example():
    g, u, v = ext_gcd(4, 6)
    assert g == 2
    assert 4 * u + 6 * v == 2


def test_ext_gcd_random_pairs():
    # 10^4 random pairs: g divides both and the Bezout identity holds
    rng = random.Random(0)
    for _ in range(10_000):
        a = rng.randint(-10**6, 10**6)
        b = rng.randint(-10**6, 10**6)
        g, u, v = ext_gcd(a, b)
        assert g >= 0
        if g:
            assert a % g == 0 and b % g == 0
        else:
            assert a == b == 0
        assert u * a + v * b == g


@given(st.integers(), st.integers())
def test_ext_gcd_property(a, b):
    g, u, v = ext_gcd(a, b)
    assert u * a + v * b == g
    assert g >= 0


def test_scalar_inv_identity():
    for ring in (ZZ, QQ, GF(7)):
        assert scalar_inv(1, ring) == ring.one


def test_scalar_inv_gf7():
    assert scalar_inv(3, GF(7)) == 5
    assert GF(7).mul(3, 5) == 1


def test_scalar_inv_integer_nonunit():
    with pytest.raises(NotAUnit):
        scalar_inv(2, ZZ)
    assert scalar_inv(-1, ZZ) == -1


def test_scalar_inv_zero():
    for ring in (ZZ, QQ, GF(5)):
        with pytest.raises(ZeroInverse):
            scalar_inv(0, ring)


@given(st.fractions().filter(lambda x: x != 0))
def test_scalar_inv_involution_rationals(x):
    assert scalar_inv(scalar_inv(x, QQ), QQ) == x
    assert scalar_inv(x, QQ) * x == 1


def test_rational_normalize_examples():
    assert rational_normalize(2, -4) == Fraction(-1, 2)
    assert rational_normalize(0, 7) == Fraction(0, 1)
    assert rational_normalize(6, 4) == Fraction(3, 2)


def test_rational_normalize_zero_denominator():
    with pytest.raises(ZeroDenominator):
        rational_normalize(1, 0)


@given(st.integers(), st.integers().filter(bool), st.integers(), st.integers().filter(bool))
def test_rational_normalize_respects_equality(n, d, n2, d2):
    same = n * d2 == n2 * d
    assert (rational_normalize(n, d) == rational_normalize(n2, d2)) == same


@given(st.integers(), st.integers().filter(bool))
def test_rational_normalize_idempotent(n, d):
    f = rational_normalize(n, d)
    assert rational_normalize(f.numerator, f.denominator) == f
    assert f.denominator > 0


def test_gf_requires_prime():
    with pytest.raises(ValueError):
        GF(6)
    with pytest.raises(ValueError):
        GF(1)
    assert GF(2).p == 2
    assert GF(101).p == 101


def test_is_prime_small():
    primes = [2, 3, 5, 7, 11, 13, 97]
    assert all(is_prime(p) for p in primes)
    assert not any(is_prime(n) for n in (0, 1, 4, 9, 15, 49, 91))


def test_ring_parsing_and_formatting():
    assert parse_ring("z") is ZZ
    assert parse_ring("q") is QQ
    assert parse_ring("gf5") == GF(5)
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert QQ.format(Fraction(3, 2)) == "3/2"
    assert QQ.format(Fraction(4, 2)) == "2"
    assert ZZ.parse("-12") == -12
    assert GF(5).parse("7") == 2


def test_gf_coerce_fraction():
    assert GF(7).coerce(Fraction(1, 2)) == 4  # 2 * 4 = 1 mod 7
    with pytest.raises(ZeroInverse):
        GF(2).coerce(Fraction(1, 2))
