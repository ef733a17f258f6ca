"""Primality and prime search.

``is_prime`` is deterministic below ``CERTIFIED_LIMIT``: Miller-Rabin with
the first thirteen prime bases has no strong pseudoprimes under 3.3e24.
Above that bound callers must opt in to the Baillie-PSW test explicitly;
``primality`` reports which of the two verdicts was used.
"""
from __future__ import annotations

from bisect import bisect_right
from functools import lru_cache

import gmpy2
import numpy as np

CERTIFIED_LIMIT = 3_317_044_064_679_887_385_961_981
_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class UncertifiedPrimality(ValueError):
    """A primality question lies beyond the deterministic range."""


def _miller_rabin(n: int, bases) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primality(n: int) -> str:
    """'composite', 'prime' (proved) or 'probable' (BPSW beyond the certified range)."""
    if n < 2:
        return "composite"
    for p in _BASES:
        if n % p == 0:
            return "prime" if n == p else "composite"
    if n < CERTIFIED_LIMIT:
        return "prime" if _miller_rabin(n, _BASES) else "composite"
    return "probable" if gmpy2.is_strong_bpsw_prp(n) else "composite"


def is_prime(n: int, allow_probable: bool = False) -> bool:
    verdict = primality(n)
    if verdict == "probable" and not allow_probable:
        raise UncertifiedPrimality(f"{n} exceeds the deterministic primality range")
    return verdict != "composite"


def next_prime(n: int, allow_probable: bool = False) -> int:
    """Smallest prime strictly greater than n."""
    c = max(n + 1, 2)
    while not is_prime(c, allow_probable):
        c += 1
    return c


def prev_prime(n: int, allow_probable: bool = False) -> int | None:
    """Largest prime strictly less than n, or None."""
    c = n - 1
    while c >= 2:
        if is_prime(c, allow_probable):
            return c
        c -= 1
    return None


@lru_cache(maxsize=4)
def sieve(limit: int) -> np.ndarray:
    """Sorted array of all primes <= limit."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags)


class PrimeTable:
    """Fast successor queries over a sieved range."""

    def __init__(self, limit: int):
        self.limit = limit
        self.primes = sieve(limit)
        self._list = self.primes.tolist()

    def next_above(self, n: int) -> int | None:
        i = bisect_right(self._list, n)
        return self._list[i] if i < len(self._list) else None
