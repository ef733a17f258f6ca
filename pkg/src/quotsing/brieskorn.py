"""Exponent arithmetic for Brieskorn-Pham singularities x0^a0 + ... + xn^an = 0.

All sums are exact fractions.  Primality of constructed entries is proved
below ``primes.CERTIFIED_LIMIT``; past it the caller must pass
``allow_probable=True`` and the result records that BPSW was used.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .primes import CERTIFIED_LIMIT, is_prime, next_prime, prev_prime

BASE_TUPLE = (2, 3, 7, 41)


@dataclass(frozen=True)
class BPTuple:
    exponents: tuple[int, ...]
    primality: str = "unchecked"  # "proved" or "probable" for constructed tuples

    def __post_init__(self):
        a = tuple(int(x) for x in self.exponents)
        object.__setattr__(self, "exponents", a)
        if len(a) < 4:
            raise ValueError("a Brieskorn-Pham tuple needs at least four exponents")
        if a[0] < 2 or any(x >= y for x, y in zip(a, a[1:])):
            raise ValueError("exponents must be strictly increasing integers >= 2")

    @property
    def n(self) -> int:
        return len(self.exponents) - 1

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self):
        return len(self.exponents)


@dataclass(frozen=True)
class BPCheck:
    exceptional: bool
    reciprocal_sum: Fraction
    pairwise_coprime: bool
    reason: str

    def __bool__(self) -> bool:
        return self.exceptional

    def to_json(self) -> dict:
        s = self.reciprocal_sum
        return {
            "exceptional": self.exceptional,
            "reciprocal_sum": f"{s.numerator}/{s.denominator}",
            "pairwise_coprime": self.pairwise_coprime,
            "reason": self.reason,
        }


def _as_tuple(t) -> BPTuple:
    return t if isinstance(t, BPTuple) else BPTuple(tuple(t))


def reciprocal_sum(exponents) -> Fraction:
    return sum((Fraction(1, a) for a in exponents), Fraction(0))


def bp_is_exceptional(t) -> BPCheck:
    """Pairwise coprime and 1 < sum 1/a_i < 1 + min 1/a_i, with the exact sum as certificate."""
    t = _as_tuple(t)
    a = t.exponents
    total = reciprocal_sum(a)
    coprime = all(gcd(x, y) == 1 for x, y in combinations(a, 2))
    upper = 1 + Fraction(1, a[-1])
    if not coprime:
        return BPCheck(False, total, False, "exponents are not pairwise coprime")
    if total <= 1:
        return BPCheck(False, total, True, "reciprocal sum is at most 1")
    if total >= upper:
        return BPCheck(False, total, True, f"reciprocal sum is at least 1 + 1/{a[-1]}")
    return BPCheck(True, total, True, "pairwise coprime and 1 < sum < 1 + 1/a_n")


def bp_restricted_check(t, allow_probable: bool = False) -> bool:
    """All exponents prime and sum_{i<n} 1/a_i < 1 < sum_{i<=n} 1/a_i."""
    t = _as_tuple(t)
    a = t.exponents
    if not all(is_prime(x, allow_probable) for x in a):
        return False
    prefix = reciprocal_sum(a[:-1])
    ok = prefix < 1 < prefix + Fraction(1, a[-1])
    if ok and not bp_is_exceptional(t):
        raise ArithmeticError(f"restricted condition holds but the tuple {a} is not exceptional")
    return ok


def _level(entries) -> str:
    return "proved" if max(entries) < CERTIFIED_LIMIT else "probable"


def _largest_prime_completing(prefix: Fraction, allow_probable: bool) -> int:
    """Largest prime c with prefix + 1/c > 1, i.e. c < 1/(1 - prefix)."""
    gap = 1 - prefix
    if gap <= 0:
        raise ArithmeticError("prefix sum already reaches 1")
    ceiling = Fraction(1) / gap
    limit = ceiling.numerator // ceiling.denominator + (0 if ceiling.denominator == 1 else 1)
    c = prev_prime(limit, allow_probable)
    if c is None:
        raise ArithmeticError("no prime below the completion bound")
    return c


def bp_construct_inductive(n: int, allow_probable: bool = False) -> BPTuple:
    """The tuple of length n+1 obtained by iterating the prime-interval step from (2,3,7,41)."""
    if n < 3:
        raise ValueError("n must be at least 3")
    current = BASE_TUPLE
    for m in range(4, n + 1):
        prefix = current[: m - 1]
        c = _largest_prime_completing(reciprocal_sum(prefix), allow_probable)
        if c <= 8:
            raise ArithmeticError(f"step {m}: completing prime {c} is too small for three primes in (c, 2c)")
        found = []
        p = c
        while len(found) < 3:
            p = next_prime(p, allow_probable)
            if p >= 2 * c:
                raise ArithmeticError(f"step {m}: fewer than three primes in ({c}, {2 * c})")
            found.append(p)
        current = prefix + (found[1], found[2])
    out = BPTuple(current, _level(current))
    if not bp_restricted_check(out, allow_probable):
        raise ArithmeticError(f"constructed tuple fails the restricted check: {current}")
    return out


def sylvester(k: int) -> list[int]:
    """s_0, ..., s_{k-1} with s_0 = 2 and s_{j+1} = s_j (s_j - 1) + 1."""
    out = [2]
    while len(out) < k:
        s = out[-1]
        out.append(s * (s - 1) + 1)
    return out[:k]


def bp_construct_sylvester(n: int, allow_probable: bool = False) -> BPTuple:
    """(s_0, ..., s_{n-1}, p) with p the least prime in (s_{n-1}, s_n - 1)."""
    if n < 3:
        raise ValueError("n must be at least 3")
    s = sylvester(n + 1)
    p = next_prime(s[n - 1], allow_probable)
    if not p < s[n] - 1:
        raise ArithmeticError(f"no prime between {s[n - 1]} and {s[n] - 1}")
    entries = tuple(s[:n]) + (p,)
    out = BPTuple(entries, _level([p]))
    if not bp_is_exceptional(out):
        raise ArithmeticError(f"Sylvester tuple fails the exceptionality check: {entries}")
    return out
