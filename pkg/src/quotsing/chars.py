"""Class functions, symmetric powers, character tables and invariant counts.

Everything here works on "class data": either an enumerated MatrixGroup or
a ClassData fixture that only records class sizes, power maps and the
natural character.  Both expose ``order``, ``class_sizes``,
``identity_class``, ``num_classes`` and ``power_map(k)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, isqrt, lcm

import numpy as np

from . import linalg
from .exactnum import CycNum, as_cyc, canonical_order, zeta
from .primes import is_prime

ZERO = CycNum.rational(0)
ONE = CycNum.rational(1)


class ConsistencyError(ArithmeticError):
    """An exact count came out non-integral or negative: a bug or bad input."""


@dataclass
class ClassData:
    """Character-level description of a group without a matrix model.

    Columns are "types" (unions of conjugacy classes on which the natural
    character and all power maps are constant), stored in fixture order.
    """

    name: str
    dim: int
    order: int
    labels: list[str]
    class_sizes: list[int]
    natural: list[CycNum]
    powers: dict[int, list[int]]
    identity_class: int
    element_orders: list[int]
    projective_element_orders: list[int]
    projective_order: int
    perfect: bool = True
    linear: list | None = None  # value rows of the linear characters, when not perfect
    declared: dict = field(default_factory=dict)

    @property
    def num_classes(self) -> int:
        return len(self.labels)

    def power_map(self, k: int) -> np.ndarray:
        n = self.num_classes
        if k == 1:
            return np.arange(n)
        out = []
        for c in range(n):
            e = k % self.element_orders[c]
            if e == 0:
                out.append(self.identity_class)
            elif e == 1:
                out.append(c)
            elif e in self.powers:
                out.append(self.powers[e][c])
            else:
                out.append(self._compose(c, e))
        return np.array(out)

    def _compose(self, c: int, e: int) -> int:
        for a in sorted(self.powers, reverse=True):
            if e % a == 0 and e // a > 1:
                return int(self.power_map(e // a)[self.powers[a][c]])
        raise KeyError(f"power map for exponent {e} is not recorded in the fixture {self.name}")

    def __repr__(self):
        return f"<ClassData {self.name!r} order={self.order}>"


def _num_classes(g) -> int:
    return g.num_classes if hasattr(g, "num_classes") else len(g.classes)


def _identity_class(g) -> int:
    return getattr(g, "identity_class", 0)


class ClassFunction:
    """Values on conjugacy classes (or fixture types) of one group."""

    __slots__ = ("group", "values")

    def __init__(self, group, values):
        values = tuple(as_cyc(v) for v in values)
        if len(values) != _num_classes(group):
            raise ValueError("class function length does not match the number of classes")
        self.group = group
        self.values = values

    def __getitem__(self, c):
        return self.values[c]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def degree(self) -> CycNum:
        return self.values[_identity_class(self.group)]

    def _check(self, other):
        if other.group is not self.group:
            raise ValueError("class functions belong to different groups")

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self, other)])

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self, other)])

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, [a * b for a, b in zip(self, other)])
        c = as_cyc(other)
        return ClassFunction(self.group, [a * c for a in self])

    __rmul__ = __mul__

    def conj(self):
        return ClassFunction(self.group, [a.conj() for a in self])

    def __eq__(self, other):
        return isinstance(other, ClassFunction) and other.group is self.group and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return "ClassFunction(" + ", ".join(str(v) for v in self.values) + ")"


def trivial_character(g) -> ClassFunction:
    return ClassFunction(g, [1] * _num_classes(g))


def natural_character(g) -> ClassFunction:
    if isinstance(g, ClassData):
        return ClassFunction(g, g.natural)
    return ClassFunction(g, [g.trace(c.representative) for c in g.classes])


def inner_product(a: ClassFunction, b: ClassFunction) -> CycNum:
    a._check(b)
    sizes = a.group.class_sizes
    total = ZERO
    for s, x, y in zip(sizes, a, b):
        if not x.is_zero() and not y.is_zero():
            total = total + x * y.conj() * s
    return total * CycNum.rational(Fraction(1, a.group.order))


def _as_count(x: CycNum, what: str) -> int:
    v = x.to_int()
    if v is None or v < 0:
        raise ConsistencyError(f"{what} is {x}, not a non-negative integer")
    return v


def power_character(chi: ClassFunction, k: int) -> ClassFunction:
    """g -> chi(g^k)."""
    pm = chi.group.power_map(k)
    return ClassFunction(chi.group, [chi[int(c)] for c in pm])


def sym_power_characters(chi: ClassFunction, max_d: int) -> list[ClassFunction]:
    """Characters of Sym^0 .. Sym^max_d via the Newton recurrence."""
    g = chi.group
    pw = [None] + [power_character(chi, k) for k in range(1, max_d + 1)]
    out = [trivial_character(g)]
    for d in range(1, max_d + 1):
        inv_d = CycNum.rational(Fraction(1, d))
        vals = []
        for c in range(len(chi)):
            acc = ZERO
            for k in range(1, d + 1):
                acc = acc + pw[k][c] * out[d - k][c]
            vals.append(acc * inv_d)
        out.append(ClassFunction(g, vals))
    return out


def sym_power_character(chi: ClassFunction, d: int) -> ClassFunction:
    return sym_power_characters(chi, d)[d]


def sym4_closed_form(chi: ClassFunction) -> ClassFunction:
    """Cycle-index formula for the fourth symmetric power."""
    c1, c2, c3, c4 = (power_character(chi, k) for k in (1, 2, 3, 4))
    vals = []
    for a, b, c, d in zip(c1, c2, c3, c4):
        vals.append((a**4 + 6 * a * a * b + 3 * b * b + 8 * a * c + 6 * d) * CycNum.rational(Fraction(1, 24)))
    return ClassFunction(chi.group, vals)


# ---------------------------------------------------------------------------
# linear characters


def linear_characters(g) -> list[ClassFunction]:
    """All degree-one characters, pulled back from the abelianization."""
    if isinstance(g, ClassData):
        if g.linear is not None:
            return [ClassFunction(g, row) for row in g.linear]
        if not g.perfect:
            raise ValueError(f"fixture {g.name} does not record its linear characters")
        return [trivial_character(g)]
    ab = g.abelianization
    q = ab.order
    if q == 1:
        return [trivial_character(g)]
    coset_of = ab.coset_of
    reps = np.zeros(q, dtype=np.int64)
    for x in range(g.order - 1, -1, -1):
        reps[coset_of[x]] = x
    expo = 1
    for f in ab.invariant_factors:
        expo = lcm(expo, f)

    def cmul(a: int, b: int) -> int:
        return int(coset_of[g.mul(int(reps[a]), int(reps[b]))])

    gens = [int(coset_of[g.rmul[s, 0]]) for s in range(len(g.generators))]
    members = [0]
    values = [[0]]  # per character: exponent of zeta_expo on each member, aligned with members
    for h in gens:
        if h in members:
            continue
        member_set = {c: i for i, c in enumerate(members)}
        powers = [0, h]
        while powers[-1] not in member_set:
            powers.append(cmul(powers[-1], h))
        e = len(powers) - 1
        he = member_set[powers[-1]]
        new_members = []
        for j in range(e):
            for c in members:
                new_members.append(cmul(c, powers[j]) if j else c)
        new_values = []
        for vals in values:
            target = vals[he]
            for w in range(expo):
                if (e * w - target) % expo == 0:
                    new_values.append([(vals[i] + j * w) % expo for j in range(e) for i in range(len(members))])
        members, values = new_members, new_values
    if len(members) != q or len(values) != q:
        raise ConsistencyError("linear character enumeration did not cover the abelianization")
    pos = {c: i for i, c in enumerate(members)}
    roots = [zeta(expo, j) for j in range(expo)]
    out = []
    for vals in values:
        cls_vals = [roots[vals[pos[int(coset_of[c.representative])]]] for c in g.classes]
        out.append(ClassFunction(g, cls_vals))
    out.sort(key=lambda f: 0 if all(v == 1 for v in f) else 1)
    return out


# ---------------------------------------------------------------------------
# invariant counts


def invariant_dimension(g, d: int, chi: ClassFunction | None = None) -> int:
    chi = natural_character(g) if chi is None else chi
    return _as_count(inner_product(sym_power_character(chi, d), trivial_character(g)), f"invariant dimension in degree {d}")


def invariant_dimensions(g, max_d: int) -> list[int]:
    """Invariant dimensions for degrees 0..max_d (character method)."""
    chi = natural_character(g)
    triv = trivial_character(g)
    return [_as_count(inner_product(s, triv), f"invariant dimension in degree {d}") for d, s in enumerate(sym_power_characters(chi, max_d))]


def semiinvariant_dimensions(g, max_d: int, lin: list[ClassFunction] | None = None) -> list[int]:
    chi = natural_character(g)
    lin = linear_characters(g) if lin is None else lin
    out = []
    for d, s in enumerate(sym_power_characters(chi, max_d)):
        out.append(sum(_as_count(inner_product(s, lam), f"semi-invariant multiplicity in degree {d}") for lam in lin))
    return out


def semiinvariant_dimension(g, d: int) -> int:
    return semiinvariant_dimensions(g, d)[d]


@dataclass(frozen=True)
class Above:
    """Sentinel: no semi-invariant of degree at most ``bound``."""

    bound: int

    def __str__(self):
        return f">{self.bound}"


def min_semiinvariant_degree(g, max_d: int) -> int | Above:
    dims = semiinvariant_dimensions(g, max_d)
    for d in range(1, max_d + 1):
        if dims[d] > 0:
            return d
    return Above(max_d)


# ---------------------------------------------------------------------------
# Molien series


def _poly_field_mul(field, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    prod = np.einsum("ai,bj,ijk->abk", p, q, field.mul_tensor)
    out = np.zeros((p.shape[0] + q.shape[0] - 1, field.phi), dtype=object)
    for a in range(p.shape[0]):
        out[a : a + q.shape[0]] += prod[a]
    return out


def _charpoly_reverse(g, x: int) -> list[CycNum]:
    """Coefficients of det(1 - t*g_x), lowest degree first."""
    field = g.field
    d, phi = g.dim, field.phi
    nums = g.nums[x].astype(object)
    den = int(g.dens[x])
    entry = {}
    for i in range(d):
        for j in range(d):
            e = np.zeros((2, phi), dtype=object)
            if i == j:
                e[0, 0] = den
            e[1] = -nums[i, j]
            entry[i, j] = e
    # minors over the first |S| rows, column subset S (bitmask)
    minors = {0: np.array([[1] + [0] * (phi - 1)], dtype=object)}
    for size in range(1, d + 1):
        row = size - 1
        nxt = {}
        for mask in range(1 << d):
            if bin(mask).count("1") != size:
                continue
            acc = None
            for j in range(d):
                if mask >> j & 1:
                    sub = minors[mask ^ (1 << j)]
                    greater = bin(mask >> (j + 1)).count("1")
                    term = _poly_field_mul(field, entry[row, j], sub)
                    if greater % 2:
                        term = -term
                    if acc is None:
                        acc = term
                    else:
                        if acc.shape[0] < term.shape[0]:
                            acc, term = term, acc
                        acc[: term.shape[0]] += term
            nxt[mask] = acc
        minors = nxt
    poly = minors[(1 << d) - 1]
    scale = den**d
    return [field.unpack(poly[k], 1) * CycNum.rational(Fraction(1, scale)) for k in range(poly.shape[0])]


def _series_inverse(coeffs: list[CycNum], max_d: int) -> list[CycNum]:
    q = [coeffs[0].inv()]
    for k in range(1, max_d + 1):
        acc = ZERO
        for j in range(1, min(k, len(coeffs) - 1) + 1):
            acc = acc + coeffs[j] * q[k - j]
        q.append(-acc * q[0])
    return q


def molien_relative(g, lam: ClassFunction | None, max_d: int) -> list[int]:
    """Dimensions of lam-semi-invariants of degree 0..max_d from Molien's formula."""
    total = [ZERO] * (max_d + 1)
    for i, c in enumerate(g.classes):
        series = _series_inverse(_charpoly_reverse(g, c.representative), max_d)
        w = CycNum.rational(c.size) if lam is None else lam[i].conj() * c.size
        total = [t + w * s for t, s in zip(total, series)]
    inv_order = CycNum.rational(Fraction(1, g.order))
    return [_as_count(t * inv_order, f"Molien coefficient of degree {d}") for d, t in enumerate(total)]


def molien_dimensions(g, max_d: int) -> list[int]:
    return molien_relative(g, None, max_d)


# ---------------------------------------------------------------------------
# Reynolds operator (brute force over all elements)


def reynolds_invariant_dimension(g, d: int) -> int:
    """Rank of the group average of Sym^d acting on monomials."""
    n, field = g.dim, g.field
    monos = sorted(combinations_with_replacement(range(n), d))
    pos = {m: i for i, m in enumerate(monos)}
    batch = g.nums.astype(object)  # (B, n, n, phi)
    dens = [int(x) for x in g.dens]
    big_l = 1
    for x in dens:
        big_l = lcm(big_l, x**d)
    weight = np.array([big_l // x**d for x in dens], dtype=object)
    phi = field.phi
    B = g.order
    one = np.zeros((B, phi), dtype=object)
    one[:, 0] = 1
    total = np.zeros((len(monos), len(monos), phi), dtype=object)
    t_obj = field.mul_tensor.astype(object)
    for m_idx, mono in enumerate(monos):
        poly = {(): one}
        for j in mono:
            # variable x_j -> sum_i g_{j i} x_i
            nxt = {}
            for key, coeff in poly.items():
                for i in range(n):
                    lin = batch[:, j, i, :]
                    if not np.any(lin):
                        continue
                    prod = np.einsum("bi,bj,ijk->bk", coeff, lin, t_obj)
                    k2 = tuple(sorted(key + (i,)))
                    nxt[k2] = nxt[k2] + prod if k2 in nxt else prod
            poly = nxt
        for key, coeff in poly.items():
            total[pos[key], m_idx] += (coeff * weight[:, None]).sum(axis=0)
    scale = CycNum.rational(Fraction(1, big_l * B))
    mat = [[field.unpack(total[r, c], 1) * scale for c in range(len(monos))] for r in range(len(monos))]
    return linalg.rank(mat)


# ---------------------------------------------------------------------------
# Dixon's modular character table


@dataclass
class CharacterTable:
    group: object
    characters: list[ClassFunction]

    @property
    def degrees(self) -> list[int]:
        return [c.degree.to_int() for c in self.characters]

    def decompose(self, f: ClassFunction) -> list[int]:
        return [_as_count(inner_product(f, chi), "constituent multiplicity") for chi in self.characters]


def _dixon_prime(exponent: int, order: int, num_classes: int) -> int:
    """Least prime p = 1 mod exponent beyond 2 sqrt(order) and the class count.

    The second condition keeps the Faddeev-LeVerrier divisions by 1..k valid mod p.
    """
    bound = max(2 * isqrt(order) + 2, num_classes)
    p = exponent + 1
    while p <= bound or not is_prime(p):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    from .exactnum import _prime_factors

    qs = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    return 1


def _mod_rref(a: np.ndarray, p: int):
    a = a.copy() % p
    rows, cols = a.shape
    piv = []
    r = 0
    for c in range(cols):
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        piv.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], piv


def _mod_nullspace(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[1]
    red, piv = _mod_rref(a, p)
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        out[f, k] = 1
        for row, pc in zip(red, piv):
            out[pc, k] = (-row[f]) % p
    return out


def _mod_charpoly(x: np.ndarray, p: int) -> list[int]:
    """Faddeev-LeVerrier modulo p; coefficients lowest degree first."""
    m = x.shape[0]
    coeffs = [0] * (m + 1)
    coeffs[m] = 1
    mk = np.zeros_like(x)
    eye = np.eye(m, dtype=np.int64)
    for k in range(1, m + 1):
        mk = (x @ mk + coeffs[m - k + 1] * eye) % p
        tr = int(np.trace(x @ mk % p)) % p
        coeffs[m - k] = (-tr * pow(k, -1, p)) % p
    return coeffs


def _mod_roots(coeffs: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    val = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        val = (val * xs + c) % p
    return [int(r) for r in np.flatnonzero(val == 0)]


def class_coefficients(g) -> np.ndarray:
    """a[r, s, t] = #{x in C_r : x^-1 z_t in C_s} for representatives z_t."""
    k = len(g.classes)
    cls = g.class_of
    inv = g.inverse_index
    a = np.zeros((k, k, k), dtype=np.int64)
    for t, c in enumerate(g.classes):
        y = g.right_perm(c.representative)[inv]  # x^-1 * z_t for every x
        counts = np.bincount(cls * k + cls[y], minlength=k * k)
        a[:, :, t] = counts.reshape(k, k)
    return a


def dixon_character_table(g) -> CharacterTable:
    """Irreducible characters by simultaneous eigenvectors of class matrices mod p."""
    k = len(g.classes)
    n = g.order
    sizes = np.array(g.class_sizes, dtype=np.int64)
    e = g.exponent
    p = _dixon_prime(e, n, k)
    a = class_coefficients(g) % p
    spaces = [np.eye(k, dtype=np.int64)]
    for r in range(1, k):
        if all(s.shape[1] == 1 for s in spaces):
            break
        mat = a[r]  # (A_r)[s, t] acting on column vectors indexed by t
        nxt = []
        for b in spaces:
            if b.shape[1] == 1:
                nxt.append(b)
                continue
            rows = _independent_rows(b, p)
            br = b[rows]
            br_inv = _mod_inverse(br, p)
            x = br_inv @ ((mat @ b) % p)[rows] % p
            roots = _mod_roots(_mod_charpoly(x, p), p)
            if len(roots) <= 1:
                nxt.append(b)
                continue
            for lam in roots:
                ker = _mod_nullspace((x - lam * np.eye(x.shape[0], dtype=np.int64)) % p, p)
                nxt.append(b @ ker % p)
        spaces = nxt
    if len(spaces) != k or any(s.shape[1] != 1 for s in spaces):
        raise ConsistencyError("class matrices did not split into one-dimensional eigenspaces")
    inv_cls = g.inverse_class
    omega = []
    for s in spaces:
        v = s[:, 0] % p
        v = v * pow(int(v[0]), -1, p) % p
        omega.append(v)
    w = pow(_primitive_root(p), (p - 1) // e, p)
    chars = []
    inv_sizes = np.array([pow(int(x), -1, p) for x in sizes], dtype=np.int64)
    for v in omega:
        ssum = int(np.sum(v * v[inv_cls] % p * inv_sizes % p) % p)
        deg2 = n * pow(ssum, -1, p) % p
        deg = next((dd for dd in range(1, isqrt(n) + 1) if (dd * dd - deg2) % p == 0), None)
        if deg is None:
            raise ConsistencyError("degree squared is not a square of a small integer")
        theta = v * deg % p * inv_sizes % p
        chars.append((deg, theta))
    if sum(d * d for d, _ in chars) != n:
        raise ConsistencyError("sum of squared degrees differs from the group order")
    roots_e = [zeta(e, j) for j in range(e)]
    results = []
    for deg, theta in chars:
        vals = []
        for c, cl in enumerate(g.classes):
            o = cl.order
            pw = g.class_powers[c]
            th = theta[pw]  # chi(g^l) mod p for l < o
            wo = pow(w, e // o, p)
            mult = []
            for j in range(o):
                acc = 0
                for l in range(o):
                    acc += int(th[l]) * pow(wo, (-j * l) % o, p)
                mult.append(acc * pow(o, -1, p) % p)
            if sum(mult) != deg or any(m > deg for m in mult):
                raise ConsistencyError("eigenvalue multiplicities failed to lift")
            val = ZERO
            for j, m_j in enumerate(mult):
                if m_j:
                    val = val + roots_e[j * (e // o)] * m_j
            vals.append(val)
        results.append(ClassFunction(g, vals))
    results.sort(key=lambda f: (f.degree.to_int(), [v.to_text() for v in f.values]))
    triv = [f for f in results if all(v == 1 for v in f)]
    rest = [f for f in results if not all(v == 1 for v in f)]
    return CharacterTable(g, triv + rest)


def _independent_rows(b: np.ndarray, p: int) -> list[int]:
    _, piv = _mod_rref(b.T.copy(), p)
    return piv


def _mod_inverse(a: np.ndarray, p: int) -> np.ndarray:
    m = a.shape[0]
    aug = np.concatenate([a % p, np.eye(m, dtype=np.int64)], axis=1)
    red, piv = _mod_rref(aug, p)
    if piv[:m] != list(range(m)):
        raise ConsistencyError("singular basis block modulo p")
    return red[:, m:]


def constituent_dimensions(g, d: int, kernel_mask: np.ndarray, table: CharacterTable | None = None) -> list[int]:
    """Dimensions of irreducible constituents of g on degree-d forms invariant under a normal subgroup.

    ``kernel_mask`` marks the elements of the normal subgroup K inside g.
    The character of the K-invariant subspace is the K-average of the
    Sym^d character over each coset.
    """
    table = dixon_character_table(g) if table is None else table
    chi = natural_character(g)
    sym = sym_power_character(chi, d)
    kidx = np.flatnonzero(kernel_mask)
    inv_k = CycNum.rational(Fraction(1, len(kidx)))
    vals = []
    for c in g.classes:
        prods = g.left_perm(c.representative)[kidx]
        counts = np.bincount(g.class_of[prods], minlength=len(g.classes))
        acc = ZERO
        for cls, cnt in enumerate(counts):
            if cnt:
                acc = acc + sym[cls] * int(cnt)
        vals.append(acc * inv_k)
    f = ClassFunction(g, vals)
    out = []
    for chi_i, mult in zip(table.characters, table.decompose(f)):
        out += [chi_i.degree.to_int()] * mult
    return sorted(out)


def commutator_invariant_dimension(g, d: int) -> int:
    """dim of [G,G]-invariants of degree d; equals the total semi-invariant dimension."""
    sym = sym_power_character(natural_character(g), d)
    mask = g.commutator_mask
    total = ZERO
    size = 0
    for i, c in enumerate(g.classes):
        if mask[c.representative]:
            total = total + sym[i] * c.size
            size += c.size
    return _as_count(total * CycNum.rational(Fraction(1, size)), "commutator invariant dimension")


def binomial_dimension(n_vars: int, d: int) -> int:
    return comb(n_vars + d - 1, d)
