from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from quotsing.brieskorn import (
    BPTuple,
    bp_construct_inductive,
    bp_construct_sylvester,
    bp_is_exceptional,
    bp_restricted_check,
    reciprocal_sum,
    sylvester,
)
from quotsing.primes import UncertifiedPrimality


def test_base_tuple():
    check = bp_is_exceptional((2, 3, 7, 41))
    assert check and check.pairwise_coprime
    assert check.reciprocal_sum == Fraction(1723, 1722)
    assert check.to_json()["reciprocal_sum"] == "1723/1722"


@pytest.mark.parametrize(
    "t,reason",
    [
        ((2, 3, 7, 42), "not pairwise coprime"),
        ((2, 3, 7, 43), "at most 1"),
        ((2, 3, 5, 7), "at least 1 + 1/7"),
    ],
)
def test_failing_tuples_give_a_reason(t, reason):
    check = bp_is_exceptional(t)
    assert not check
    assert reason in check.reason


@pytest.mark.parametrize(
    "n,expected",
    [(3, (2, 3, 7, 41)), (4, (2, 3, 7, 47, 53)), (5, (2, 3, 7, 47, 401, 409))],
)
def test_inductive_examples(n, expected):
    t = bp_construct_inductive(n)
    assert t.exponents == expected
    assert t.primality == "proved"
    assert bp_restricted_check(t)


@pytest.mark.parametrize("n", range(3, 8))
def test_inductive_tuples_are_prime(n):
    t = bp_construct_inductive(n)
    assert all(sympy.isprime(a) for a in t)
    assert len(t) == n + 1


def test_large_inductive_tuple_requires_opt_in():
    with pytest.raises(UncertifiedPrimality):
        bp_construct_inductive(12)
    t = bp_construct_inductive(12, allow_probable=True)
    assert t.primality == "probable"
    assert bp_is_exceptional(t)


def test_sylvester_sequence():
    assert sylvester(6) == [2, 3, 7, 43, 1807, 3263443]
    s = sylvester(8)
    for k in range(1, 8):
        assert reciprocal_sum(s[:k]) == 1 - Fraction(1, s[k] - 1)


@pytest.mark.parametrize("n", range(3, 8))
def test_sylvester_tuples(n):
    t = bp_construct_sylvester(n)
    s = sylvester(n + 1)
    assert t.exponents[:n] == tuple(s[:n])
    p = t.exponents[-1]
    assert sympy.isprime(p) and p == sympy.nextprime(s[n - 1])
    assert bp_is_exceptional(t)


def test_sylvester_tuple_is_not_restricted_when_composite():
    # 1807 = 13 * 139 sits in the tuple from n = 5 on
    assert not bp_restricted_check(bp_construct_sylvester(5))


@pytest.mark.parametrize("bad", [(2, 3, 7), (3, 2, 7, 41), (1, 3, 7, 41), (2, 3, 3, 41)])
def test_invalid_tuples(bad):
    with pytest.raises(ValueError):
        BPTuple(bad)


def test_construct_rejects_small_n():
    with pytest.raises(ValueError):
        bp_construct_inductive(2)
    with pytest.raises(ValueError):
        bp_construct_sylvester(2)


@given(st.lists(st.integers(2, 300), min_size=4, max_size=6, unique=True))
def test_exceptional_matches_definition(values):
    a = sorted(values)
    check = bp_is_exceptional(a)
    total = sum(Fraction(1, x) for x in a)
    coprime = all(sympy.gcd(x, y) == 1 for i, x in enumerate(a) for y in a[i + 1 :])
    assert check.reciprocal_sum == total
    assert bool(check) == (coprime and 1 < total < 1 + Fraction(1, a[-1]))


@given(st.lists(st.sampled_from(list(sympy.primerange(2, 200))), min_size=4, max_size=5, unique=True))
def test_restricted_condition_implies_exceptional(primes):
    a = sorted(primes)
    restricted = bp_restricted_check(a)
    prefix = sum(Fraction(1, x) for x in a[:-1])
    assert restricted == (prefix < 1 < prefix + Fraction(1, a[-1]))
    if restricted:
        assert bp_is_exceptional(a)


@given(st.lists(st.integers(2, 500), min_size=4, max_size=5, unique=True))
def test_restricted_requires_primes(values):
    a = sorted(values)
    assume(not all(sympy.isprime(x) for x in a))
    assert not bp_restricted_check(a)
