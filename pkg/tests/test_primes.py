import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quotsing.primes import (
    CERTIFIED_LIMIT,
    PrimeTable,
    UncertifiedPrimality,
    is_prime,
    next_prime,
    prev_prime,
    primality,
    sieve,
)

# Strong pseudoprimes to several small bases; all composite.
PSEUDOPRIMES = [2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321, 3825123056546413051]


@given(st.integers(-10, 10**7))
@settings(max_examples=400)
def test_matches_sympy_on_small_integers(n):
    assert is_prime(n) == sympy.isprime(n)


@given(st.integers(10**12, CERTIFIED_LIMIT - 1))
@settings(max_examples=200)
def test_matches_sympy_in_certified_range(n):
    assert is_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize("n", PSEUDOPRIMES)
def test_strong_pseudoprimes_are_rejected(n):
    assert primality(n) == "composite"


def test_beyond_certified_range_needs_opt_in():
    p = sympy.nextprime(CERTIFIED_LIMIT)
    assert primality(p) == "probable"
    with pytest.raises(UncertifiedPrimality):
        is_prime(p)
    assert is_prime(p, allow_probable=True)
    # a composite is still reported composite without opting in
    assert not is_prime(p * 3)


@given(st.integers(0, 10**6))
def test_next_and_previous_prime(n):
    assert next_prime(n) == sympy.nextprime(n)
    expected = sympy.prevprime(n) if n > 2 else None
    assert prev_prime(n) == expected


def test_sieve_and_table():
    primes = sieve(1000)
    assert primes.tolist() == list(sympy.primerange(2, 1001))
    table = PrimeTable(100)
    assert table.next_above(89) == 97
    assert table.next_above(97) is None
