from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tdlc_scale.errors import InputError, NonPrimeError
from tdlc_scale.exact_arith import (
    INF,
    format_rational,
    is_prime,
    norm,
    parse_rational,
    unit_part,
    vp,
)

PRIMES = [2, 3, 5, 7, 11]


def trial_division(n, p):
    """Oracle: strip factors of p one at a time."""
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def test_vp_examples():
    for p in PRIMES:
        assert vp(Fraction(1, p), p) == -1
        assert vp(0, p) == INF
    assert vp(12, 2) == trial_division(12, 2) == 2
    assert vp(12, 3) == trial_division(12, 3) == 1


def test_non_prime_rejected():
    for bad in (0, 1, 4, 9, -3, 2.0):
        with pytest.raises(NonPrimeError):
            vp(5, bad)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_norm_and_unit_part():
    assert norm(Fraction(1, 9), 3) == 9
    assert norm(18, 3) == Fraction(1, 9)
    assert norm(0, 3) == 0
    assert unit_part(Fraction(-18, 5), 3) == Fraction(-2, 5)


nonzero = st.fractions().filter(lambda q: q != 0)


@given(nonzero, nonzero, st.sampled_from(PRIMES))
def test_vp_multiplicative(a, b, p):
    assert vp(a * b, p) == vp(a, p) + vp(b, p)


@given(st.fractions(), st.fractions(), st.sampled_from(PRIMES))
def test_vp_ultrametric(a, b, p):
    va, vb = vp(a, p), vp(b, p)
    assert vp(a + b, p) >= min(va, vb)
    if va != vb:
        assert vp(a + b, p) == min(va, vb)


@given(st.integers(min_value=1, max_value=10**12), st.sampled_from(PRIMES))
def test_vp_matches_trial_division(n, p):
    assert vp(n, p) == trial_division(n, p)


@given(st.fractions())
def test_rational_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


@pytest.mark.parametrize("text,value", [("3", 3), ("-1/3", Fraction(-1, 3)), ("4/6", Fraction(2, 3)), (" 7 / 2 ", Fraction(7, 2))])
def test_parse(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "1/0", "a", "1.5", "--1", "1/-2"])
def test_parse_rejects(text):
    with pytest.raises(InputError):
        parse_rational(text)


def test_zero_unique():
    assert format_rational(parse_rational("0/5")) == "0"
