"""Exact arithmetic in the rationals and in cyclotomic fields Q(zeta_m).

Elements of Q(zeta_m) are stored in the power basis 1, z, ..., z^(phi(m)-1)
with z = exp(2 pi i / m), reduced modulo the m-th cyclotomic polynomial.
A single positive integer denominator is kept in lowest terms, so that
equality on a fixed order is plain tuple comparison.

Orders congruent to 2 mod 4 are never stored: Q(zeta_2k) = Q(zeta_k) for
odd k, and the constructors rewrite such roots into the smaller order.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm

import numpy as np

Rational = Fraction


def _prime_factors(m: int) -> list[int]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


@lru_cache(maxsize=None)
def totient(m: int) -> int:
    r = m
    for p in _prime_factors(m):
        r = r // p * (p - 1)
    return r


def canonical_order(m: int) -> int:
    """Smallest order describing the same field as Q(zeta_m)."""
    if m % 4 == 2:
        m //= 2
    return m


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # both low-to-high, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num[: len(den) - 1]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds the power-basis coordinates of zeta_m^j, 0 <= j < m."""
    phi = totient(m)
    low = cyclotomic_poly(m)[:phi]
    rows = []
    vec = [1] + [0] * (phi - 1)
    for _ in range(m):
        rows.append(tuple(vec))
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [v - top * c for v, c in zip(vec, low)]
    return tuple(rows)


@lru_cache(maxsize=None)
def _subfield_solver(m: int, m2: int):
    """Data to test membership of Q(zeta_m) elements in Q(zeta_m2)."""
    table = reduction_table(m)
    phi, phi2 = totient(m), totient(m2)
    step = m // m2
    emb = [[Fraction(table[(j * step) % m][i]) for j in range(phi2)] for i in range(phi)]
    # choose phi2 independent rows and invert that square block
    rows, basis = [], []
    for i in range(phi):
        cand = list(emb[i])
        for piv, vec in basis:
            if cand[piv]:
                f = cand[piv]
                cand = [a - f * b for a, b in zip(cand, vec)]
        piv = next((k for k, v in enumerate(cand) if v), None)
        if piv is None:
            continue
        cand = [v / cand[piv] for v in cand]
        basis.append((piv, cand))
        rows.append(i)
        if len(rows) == phi2:
            break
    block = [emb[i] for i in rows]
    inv = _fraction_inverse(block)
    return rows, inv, emb


def _fraction_inverse(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[p] = aug[p], aug[c]
        f = aug[c][c]
        aug[c] = [v / f for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                g = aug[r][c]
                aug[r] = [a - g * b for a, b in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


class CycNum:
    """An exact element of Q(zeta_order); immutable and hashable."""

    __slots__ = ("order", "num", "den", "_hash")

    def __init__(self, order: int, num, den: int = 1):
        if order % 4 == 2:
            raise ValueError("use CycNum.root or promote; order must not be 2 mod 4")
        num = tuple(int(c) for c in num)
        if len(num) != totient(order):
            raise ValueError(f"expected {totient(order)} coordinates for order {order}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = tuple(-c for c in num), -den
        g = reduce(gcd, num, den)
        if g > 1:
            num, den = tuple(c // g for c in num), den // g
        self.order = order
        self.num = num
        self.den = den
        self._hash = None

    # ---- constructors -------------------------------------------------
    @classmethod
    def rational(cls, q) -> "CycNum":
        q = Fraction(q)
        return cls(1, (q.numerator,), q.denominator)

    @classmethod
    def root(cls, m: int, k: int = 1) -> "CycNum":
        """zeta_m ** k."""
        k %= m
        sign = 1
        if m % 4 == 2:
            h = m // 2
            # zeta_{2h} = -zeta_h^{(h+1)/2} for odd h
            sign = -1 if k % 2 else 1
            k = (k * (h + 1) // 2) % h
            m = h
        if m == 1:
            return cls(1, (sign,))
        return cls(m, [sign * c for c in reduction_table(m)[k]])

    @classmethod
    def coerce(cls, x) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction, np.integer)):
            return cls.rational(int(x) if isinstance(x, np.integer) else x)
        raise TypeError(f"cannot convert {type(x).__name__} to CycNum")

    # ---- field embedding ---------------------------------------------
    def promote(self, m: int) -> "CycNum":
        """The same value expressed in Q(zeta_m); requires order | m."""
        m = canonical_order(m)
        if m == self.order:
            return self
        if m % self.order:
            raise ValueError(f"Q(zeta_{self.order}) is not contained in Q(zeta_{m})")
        table = reduction_table(m)
        step = m // self.order
        out = [0] * totient(m)
        for i, c in enumerate(self.num):
            if c:
                for j, t in enumerate(table[i * step]):
                    if t:
                        out[j] += c * t
        return CycNum(m, out, self.den)

    def _restrict(self, m2: int) -> "CycNum | None":
        rows, inv, emb = _subfield_solver(self.order, m2)
        rhs = [self.num[i] for i in rows]
        x = [sum(Fraction(a) * b for a, b in zip(row, rhs)) for row in inv]
        for i, erow in enumerate(emb):
            if sum(a * b for a, b in zip(erow, x)) != self.num[i]:
                return None
        den = reduce(lcm, (v.denominator for v in x), 1)
        return CycNum(m2, [int(v * den) for v in x], self.den * den)

    def minimal(self) -> "CycNum":
        """Representation in the smallest cyclotomic field containing the value."""
        a = self
        if not any(a.num[1:]):
            return CycNum(1, (a.num[0] if a.num else 0,), a.den)
        shrinking = True
        while shrinking and a.order > 1:
            shrinking = False
            for p in _prime_factors(a.order):
                m2 = canonical_order(a.order // p)
                b = a._restrict(m2)
                if b is not None:
                    a, shrinking = b, True
                    break
        return a

    # ---- queries --------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction | None:
        if not self.is_rational():
            return None
        return Fraction(self.num[0], self.den)

    def to_int(self) -> int | None:
        q = self.to_fraction()
        if q is None or q.denominator != 1:
            return None
        return q.numerator

    def __complex__(self) -> complex:
        z = np.exp(2j * np.pi / self.order)
        return complex(sum(c * z**i for i, c in enumerate(self.num)) / self.den)

    # ---- arithmetic -----------------------------------------------------
    def _pair(self, other):
        other = CycNum.coerce(other)
        if other.order == self.order:
            return self, other
        m = lcm(self.order, other.order)
        return self.promote(m), other.promote(m)

    def __add__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return CycNum(a.order, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.order, [-c for c in self.num], self.den)

    def __sub__(self, other):
        try:
            return self + (-CycNum.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return CycNum.coerce(other) - self

    def __mul__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        m = a.order
        if m == 1:
            return CycNum(1, (a.num[0] * b.num[0],), a.den * b.den)
        phi = len(a.num)
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        out = prod[:phi]
        table = reduction_table(m)
        for j in range(phi, 2 * phi - 1):
            c = prod[j]
            if c:
                for k, t in enumerate(table[j % m]):
                    if t:
                        out[k] += c * t
        return CycNum(m, out, a.den * b.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "CycNum":
        """Image under the automorphism zeta_m -> zeta_m^k (gcd(k, m) = 1)."""
        m = self.order
        if m == 1:
            return self
        if gcd(k, m) != 1:
            raise ValueError("Galois exponent must be coprime to the order")
        table = reduction_table(m)
        out = [0] * len(self.num)
        for i, c in enumerate(self.num):
            if c:
                for j, t in enumerate(table[(i * k) % m]):
                    if t:
                        out[j] += c * t
        return CycNum(m, out, self.den)

    def conj(self) -> "CycNum":
        return self.galois(self.order - 1) if self.order > 1 else self

    def inv(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        m = self.order
        if m == 1:
            return CycNum(1, (self.den,), self.num[0])
        rest = CycNum.rational(1)
        for k in range(2, m):
            if gcd(k, m) == 1:
                rest = rest * self.galois(k)
        norm = (self * rest).to_fraction()
        assert norm is not None and norm != 0
        return rest * CycNum.rational(1 / norm)

    def __truediv__(self, other):
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return CycNum.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result, base = CycNum.rational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ---- comparison and hashing --------------------------------------
    def __eq__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        if self._hash is None:
            mm = self.minimal()
            self._hash = hash((mm.order, mm.num, mm.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # ---- text -----------------------------------------------------------
    def to_text(self, root_order: int | None = None) -> str:
        """Render in the entry grammar, with z = zeta_root_order."""
        a = self if root_order is None else self.promote(root_order)
        m = root_order if root_order is not None else a.order
        step = 1
        if root_order is not None and canonical_order(m) != m:
            # power basis lives in zeta_{m/2}; zeta_{m/2} = zeta_m^2
            step = 2
        terms = []
        for i, c in enumerate(a.num):
            if not c:
                continue
            q = Fraction(c, a.den)
            mag = abs(q)
            e = i * step
            coeff = str(mag)
            if e == 0:
                body = coeff
            else:
                zpart = "z" if e == 1 else f"z^{e}"
                body = zpart if mag == 1 else f"{coeff}*{zpart}"
            terms.append(("-" if q < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        if self.order == 1:
            return str(Fraction(self.num[0], self.den))
        return f"[{self.to_text()}]_z{self.order}"

    def __repr__(self):
        return f"CycNum({self.order}, {self.to_text()!r})"


def zeta(m: int, k: int = 1) -> CycNum:
    return CycNum.root(m, k)


def as_cyc(x) -> CycNum:
    return CycNum.coerce(x)


def sqrt_of_int(n: int) -> CycNum:
    """Square root of a (possibly negative) integer via Gauss sums."""
    if n == 0:
        return CycNum.rational(0)
    sign = -1 if n < 0 else 1
    n = abs(n)
    sq, rest = 1, 1
    for p in _prime_factors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        sq *= p ** (e // 2)
        if e % 2:
            rest *= p
    out = CycNum.rational(sq)
    for p in _prime_factors(rest):
        if p == 2:
            r = zeta(8) + zeta(8, 7)  # sqrt(2)
        else:
            g = sum((zeta(p, (k * k) % p) for k in range(p)), CycNum.rational(0))
            # g^2 = p if p = 1 mod 4, else -p
            r = g if p % 4 == 1 else g * zeta(4, 3)
        out = out * r
    if sign < 0:
        out = out * zeta(4)
    return out


class ParseError(ValueError):
    """Malformed number in the entry grammar; carries the character offset."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1} in {text!r}")
        self.text = text
        self.pos = pos


_TERM = re.compile(r"(\d+)(?:/(\d+))?(?:\*z(?:\^(\d+))?)?|z(?:\^(\d+))?")


def parse_cyc(text: str, root_order: int) -> CycNum:
    """Parse a signed sum of terms c, c*z^k, z^k with z = zeta_root_order."""
    if root_order < 1:
        raise ValueError("root_order must be positive")
    s = "".join(text.split())
    if not s:
        raise ParseError("empty number", text, 0)
    pos = 0
    total = CycNum.rational(0)
    first = True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ParseError("expected '+' or '-'", text, pos)
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError("expected a term", text, pos)
        num, den, exp1, exp2 = m.groups()
        if num is not None:
            if den is not None and int(den) == 0:
                raise ParseError("zero denominator", text, pos)
            coeff = Fraction(int(num), int(den) if den else 1)
            exp = 0
            if m.group(0).find("z") >= 0:
                exp = int(exp1) if exp1 is not None else 1
        else:
            coeff = Fraction(1)
            exp = int(exp2) if exp2 is not None else 1
        total = total + CycNum.root(root_order, exp) * CycNum.rational(sign * coeff)
        pos = m.end()
        first = False
    return total


class PackedField:
    """Vectorised integer arithmetic in Z[zeta_m] for numpy batches.

    An element is an int64 vector of length phi(m); ``mul_tensor[i, j]``
    holds the coordinates of basis_i * basis_j.
    """

    def __init__(self, m: int):
        m = canonical_order(m)
        self.m = m
        self.phi = totient(m)
        self.table = np.array(reduction_table(m), dtype=np.int64)
        t = np.zeros((self.phi, self.phi, self.phi), dtype=np.int64)
        for i in range(self.phi):
            for j in range(self.phi):
                t[i, j] = self.table[(i + j) % m]
        self.mul_tensor = t

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise product of batches with trailing axis phi."""
        return np.einsum("...i,...j,ijk->...k", a, b, self.mul_tensor)

    def pack(self, x: CycNum) -> tuple[np.ndarray, int]:
        x = x.promote(self.m)
        return np.array(x.num, dtype=np.int64), x.den

    def unpack(self, vec, den: int = 1) -> CycNum:
        return CycNum(self.m, [int(v) for v in vec], int(den))
