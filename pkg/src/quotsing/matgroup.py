"""Finite matrix groups over cyclotomic fields, fully enumerated.

Elements are kept in a packed integer form: an int64 array of shape
(dim, dim, phi(m)) holding numerators in the power basis of Q(zeta_m), plus
one positive denominator per element, divided through by the gcd of all
entries.  That form is canonical, so its bytes serve as a dictionary key.

Closure is a breadth-first search whose frontier is multiplied by each
generator in one numpy matmul.  Besides the element list the search keeps
the BFS tree (parent, generator) and the permutations x -> x*s and
x -> s*x for every generator s.  Those permutations drive everything else:
products of arbitrary elements (walk the word of the right factor),
conjugation orbits, inverses and subgroup closures never touch matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import linalg
from .exactnum import CycNum, PackedField, _prime_factors, as_cyc, canonical_order, parse_cyc

DEFAULT_LIMIT = 10**6
_ENTRY_BOUND = 2**31


class GroupTooLarge(RuntimeError):
    """Closure exceeded its element limit (or entries grew without bound)."""


class GMatrix:
    """Square matrix with CycNum entries; immutable and hashable."""

    __slots__ = ("entries", "dim", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(as_cyc(x) for x in row) for row in rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        self.entries = rows
        self.dim = len(rows)
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "GMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values) -> "GMatrix":
        values = list(values)
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, n: int, c) -> "GMatrix":
        return cls.diag([c] * n)

    @classmethod
    def from_text(cls, rows, root_order: int) -> "GMatrix":
        return cls([[parse_cyc(str(x), root_order) for x in row] for row in rows])

    @property
    def field_order(self) -> int:
        return canonical_order(linalg.common_order(self.entries))

    def __matmul__(self, other: "GMatrix") -> "GMatrix":
        return GMatrix(linalg.matmul(self.entries, other.entries))

    def scale(self, c) -> "GMatrix":
        c = as_cyc(c)
        return GMatrix([[c * x for x in row] for row in self.entries])

    def __neg__(self):
        return self.scale(-1)

    def det(self) -> CycNum:
        return linalg.det(self.entries)

    def trace(self) -> CycNum:
        return sum((self.entries[i][i] for i in range(self.dim)), CycNum.rational(0))

    def inverse(self) -> "GMatrix":
        return GMatrix(linalg.inverse(self.entries))

    def transpose(self) -> "GMatrix":
        return GMatrix(list(zip(*self.entries)))

    def kron(self, other: "GMatrix") -> "GMatrix":
        n, k = self.dim, other.dim
        return GMatrix(
            [[self.entries[i // k][j // k] * other.entries[i % k][j % k] for j in range(n * k)] for i in range(n * k)]
        )

    def block_diag(self, other: "GMatrix") -> "GMatrix":
        n, k = self.dim, other.dim
        rows = [list(r) + [0] * k for r in self.entries] + [[0] * n + list(r) for r in other.entries]
        return GMatrix(rows)

    def minus_identity_rank(self) -> int:
        rows = [[x - (1 if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(self.entries)]
        return linalg.rank(rows)

    def is_identity(self) -> bool:
        return self == GMatrix.identity(self.dim)

    def is_scalar(self) -> bool:
        e = self.entries
        return all(
            (e[i][j].is_zero() if i != j else e[i][i] == e[0][0]) for i in range(self.dim) for j in range(self.dim)
        )

    def __eq__(self, other):
        return isinstance(other, GMatrix) and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def to_text(self, root_order: int):
        return [[x.to_text(root_order) for x in row] for row in self.entries]

    def __repr__(self):
        return "GMatrix(" + repr([[x.to_text() + f" (z{x.order})" if x.order > 1 else x.to_text() for x in r] for r in self.entries]) + ")"


def is_reflection(g: GMatrix) -> bool:
    """True iff g fixes a hyperplane pointwise and is not the identity."""
    return g.minus_identity_rank() == 1


# ---------------------------------------------------------------------------
# packed batch arithmetic


def _normalize(nums: np.ndarray, dens: np.ndarray):
    flat = nums.reshape(nums.shape[0], -1)
    g = np.gcd.reduce(flat, axis=1)
    g = np.gcd(g, dens)
    g[g == 0] = 1
    return nums // g[:, None, None, None], dens // g


def _right_operator(field: PackedField, s: np.ndarray) -> np.ndarray:
    d, phi = s.shape[0], field.phi
    u = np.einsum("scj,ijk->sick", s, field.mul_tensor)
    return u.reshape(d * phi, d * phi)


def _left_operator(field: PackedField, s: np.ndarray) -> np.ndarray:
    d, phi = s.shape[0], field.phi
    v = np.einsum("rsi,ijk->rksj", s, field.mul_tensor)
    return v.reshape(d * phi, d * phi)


def _mul_right(a: np.ndarray, op: np.ndarray) -> np.ndarray:
    b, d, _, phi = a.shape
    return (a.reshape(b * d, d * phi) @ op).reshape(b, d, d, phi)


def _mul_left(op: np.ndarray, a: np.ndarray) -> np.ndarray:
    b, d, _, phi = a.shape
    at = a.transpose(1, 3, 0, 2).reshape(d * phi, b * d)
    return (op @ at).reshape(d, phi, b, d).transpose(2, 0, 3, 1)


def _keys(nums: np.ndarray, dens: np.ndarray) -> list[bytes]:
    flat = np.ascontiguousarray(np.concatenate([nums.reshape(nums.shape[0], -1), dens[:, None]], axis=1))
    raw = flat.tobytes()
    w = flat.shape[1] * 8
    return [raw[i * w : (i + 1) * w] for i in range(flat.shape[0])]


def _check_bounds(nums, dens):
    if nums.size and (np.abs(nums).max() > _ENTRY_BOUND or dens.max() > _ENTRY_BOUND):
        raise GroupTooLarge("matrix entries grew without bound; the group is infinite or too large")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjClass:
    representative: int
    size: int
    members: np.ndarray
    order: int


@dataclass(frozen=True)
class Abelianization:
    invariant_factors: tuple[int, ...]
    coset_of: np.ndarray
    order: int


class MatrixGroup:
    """A finite matrix group with every element enumerated.

    Elements are referred to by index; index 0 is the identity and indices
    follow breadth-first order from the generators.
    """

    def __init__(self, field, dim, generators, nums, dens, parent, pgen, rmul, lmul, ambient=None, ambient_index=None):
        self.field = field
        self.dim = dim
        self.generators = list(generators)
        self.nums = nums
        self.dens = dens
        self.parent = parent
        self.pgen = pgen
        self.rmul = rmul
        self.lmul = lmul
        self.order = len(dens)
        self.ambient = ambient
        self.ambient_index = ambient_index
        self.name: str | None = None

    def __len__(self):
        return self.order

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<MatrixGroup{label} dim={self.dim} order={self.order}>"

    # ---- element access -------------------------------------------------
    def element(self, i: int) -> GMatrix:
        m = self.field.m
        return GMatrix(
            [[CycNum(m, self.nums[i, r, c], int(self.dens[i])) for c in range(self.dim)] for r in range(self.dim)]
        )

    @property
    def elements(self) -> list[GMatrix]:
        return [self.element(i) for i in range(self.order)]

    @cached_property
    def _index(self) -> dict[bytes, int]:
        return {k: i for i, k in enumerate(_keys(self.nums, self.dens))}

    def index_of(self, g: GMatrix) -> int | None:
        if g.dim != self.dim:
            return None
        try:
            rows = [[x.promote(self.field.m) for x in row] for row in g.entries]
        except ValueError:
            return None
        den = 1
        for row in rows:
            for x in row:
                den = lcm(den, x.den)
        nums = np.array([[[c * (den // x.den) for c in x.num] for x in row] for row in rows], dtype=np.int64)
        nums, dens = _normalize(nums[None], np.array([den], dtype=np.int64))
        return self._index.get(_keys(nums, dens)[0])

    def __contains__(self, g: GMatrix) -> bool:
        return self.index_of(g) is not None

    def word(self, x: int) -> list[int]:
        out = []
        while x:
            out.append(int(self.pgen[x]))
            x = int(self.parent[x])
        return out[::-1]

    def mul(self, x: int, y: int) -> int:
        for s in self.word(y):
            x = int(self.rmul[s, x])
        return x

    def right_perm(self, y: int) -> np.ndarray:
        p = np.arange(self.order)
        for s in self.word(y):
            p = self.rmul[s][p]
        return p

    def left_perm(self, y: int) -> np.ndarray:
        p = np.arange(self.order)
        for s in reversed(self.word(y)):
            p = self.lmul[s][p]
        return p

    @cached_property
    def inverse_index(self) -> np.ndarray:
        linv = [np.argsort(l) for l in self.lmul]
        inv = np.zeros(self.order, dtype=np.int64)
        for x in range(1, self.order):
            inv[x] = linv[self.pgen[x]][inv[self.parent[x]]]
        return inv

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inverse_index[x]), -k
        out = 0
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def element_order(self, x: int) -> int:
        y, k = x, 1
        while y:
            y = self.mul(y, x)
            k += 1
        return k

    def trace(self, x: int) -> CycNum:
        t = self.nums[x].diagonal(axis1=0, axis2=1).sum(axis=1)
        return self.field.unpack(t, int(self.dens[x]))

    # ---- conjugacy -------------------------------------------------------
    @cached_property
    def conj_perms(self) -> list[np.ndarray]:
        """x -> s^-1 x s for every generator s."""
        return [np.argsort(l)[r] for r, l in zip(self.rmul, self.lmul)]

    @cached_property
    def classes(self) -> list[ConjClass]:
        n = self.order
        rows = np.concatenate([np.arange(n)] * len(self.conj_perms)) if self.conj_perms else np.arange(0)
        cols = np.concatenate(self.conj_perms) if self.conj_perms else np.arange(0)
        graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
        _, labels = connected_components(graph, directed=True, connection="weak")
        groups: dict[int, list[int]] = {}
        for x, lab in enumerate(labels):
            groups.setdefault(int(lab), []).append(x)
        out = []
        for members in groups.values():
            rep = members[0]
            out.append(ConjClass(rep, len(members), np.array(members), self.element_order(rep)))
        out.sort(key=lambda c: (c.order, c.size, c.representative))
        return out

    @cached_property
    def class_of(self) -> np.ndarray:
        lab = np.empty(self.order, dtype=np.int64)
        for i, c in enumerate(self.classes):
            lab[c.members] = i
        return lab

    @property
    def class_sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    @cached_property
    def class_powers(self) -> list[np.ndarray]:
        """For class c, entry k is the class of rep^k (k modulo the rep's order)."""
        out = []
        for c in self.classes:
            pw, x = [0], 0
            for _ in range(c.order - 1):
                x = self.mul(x, c.representative)
                pw.append(int(self.class_of[x]))
            out.append(np.array(pw))
        return out

    def power_map(self, k: int) -> np.ndarray:
        return np.array([p[k % len(p)] for p in self.class_powers])

    @cached_property
    def exponent(self) -> int:
        e = 1
        for c in self.classes:
            e = lcm(e, c.order)
        return e

    @cached_property
    def inverse_class(self) -> np.ndarray:
        return self.power_map(-1)

    # ---- subgroups -------------------------------------------------------
    def _closure_mask(self, start_mask: np.ndarray, perms: list[np.ndarray]) -> np.ndarray:
        mask = start_mask.copy()
        frontier = np.flatnonzero(mask)
        while frontier.size:
            found = []
            for p in perms:
                img = p[frontier]
                img = img[~mask[img]]
                if img.size:
                    img = np.unique(img)
                    mask[img] = True
                    found.append(img)
            frontier = np.unique(np.concatenate(found)) if found else np.array([], dtype=np.int64)
        return mask

    def generated_mask(self, elems) -> np.ndarray:
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        return self._closure_mask(mask, [self.right_perm(int(x)) for x in elems])

    def normal_closure_mask(self, elems) -> np.ndarray:
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        perms = [self.right_perm(int(x)) for x in elems] + list(self.conj_perms)
        return self._closure_mask(mask, perms)

    def subgroup(self, elems, name: str | None = None) -> "MatrixGroup":
        """Subgroup generated by the given element indices."""
        elems = [int(x) for x in elems]
        perms = [self.right_perm(x) for x in elems]
        members, parent, pgen = [0], [-1], [-1]
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        frontier = [0]
        while frontier:
            nxt = []
            for s, p in enumerate(perms):
                for src in frontier:
                    img = int(p[src])
                    if not seen[img]:
                        seen[img] = True
                        members.append(img)
                        parent.append(src)
                        pgen.append(s)
                        nxt.append(img)
            frontier = nxt
        members = np.array(members)
        pos = np.full(self.order, -1, dtype=np.int64)
        pos[members] = np.arange(len(members))
        k = len(elems)
        rmul = np.array([pos[p[members]] for p in perms], dtype=np.int64).reshape(k, len(members))
        lmul = np.array([pos[self.left_perm(x)[members]] for x in elems], dtype=np.int64).reshape(k, len(members))
        sub_parent = np.array([-1] + [int(pos[x]) for x in parent[1:]], dtype=np.int64)
        g = MatrixGroup(
            self.field,
            self.dim,
            [self.element(x) for x in elems],
            self.nums[members],
            self.dens[members],
            sub_parent,
            np.array(pgen),
            rmul,
            lmul,
            ambient=self.ambient if self.ambient is not None else self,
            ambient_index=members if self.ambient_index is None else self.ambient_index[members],
        )
        g.name = name
        return g

    def mask_generators(self, mask: np.ndarray) -> list[int]:
        """A short generating set (greedy, in index order) of the subgroup given by a mask."""
        gens: list[int] = []
        current = np.zeros(self.order, dtype=bool)
        current[0] = True
        target = int(mask.sum())
        for x in np.flatnonzero(mask):
            if int(current.sum()) == target:
                break
            if not current[x]:
                gens.append(int(x))
                current = self._closure_mask(current, [self.right_perm(int(y)) for y in gens])
        return gens

    def subgroup_from_mask(self, mask: np.ndarray, name: str | None = None) -> "MatrixGroup":
        return self.subgroup(self.mask_generators(mask), name=name)

    @cached_property
    def center_mask(self) -> np.ndarray:
        mask = np.ones(self.order, dtype=bool)
        for p in self.conj_perms:
            mask &= p == np.arange(self.order)
        return mask

    def center(self) -> "MatrixGroup":
        return self.subgroup_from_mask(self.center_mask)

    @cached_property
    def commutator_mask(self) -> np.ndarray:
        inv = self.inverse_index
        gens = [self._gen_index(s) for s in range(len(self.generators))]
        comms = set()
        for a in gens:
            for b in gens:
                c = self.mul(self.mul(self.mul(a, b), int(inv[a])), int(inv[b]))
                if c:
                    comms.add(c)
        return self.normal_closure_mask(sorted(comms))

    def commutator_subgroup(self) -> "MatrixGroup":
        return self.subgroup_from_mask(self.commutator_mask)

    def _gen_index(self, s: int) -> int:
        return int(self.rmul[s, 0])

    @cached_property
    def abelianization(self) -> Abelianization:
        kgens = self.mask_generators(self.commutator_mask)
        n = self.order
        if kgens:
            rows = np.concatenate([np.arange(n)] * len(kgens))
            cols = np.concatenate([self.right_perm(k) for k in kgens])
            graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
            ncos, labels = connected_components(graph, directed=True, connection="weak")
        else:
            ncos, labels = n, np.arange(n)
        # relabel so that the identity coset is 0 and labels follow first occurrence
        first = {}
        relab = np.empty(n, dtype=np.int64)
        for x, lab in enumerate(labels):
            relab[x] = first.setdefault(int(lab), len(first))
        reps = np.zeros(ncos, dtype=np.int64)
        for x in range(n - 1, -1, -1):
            reps[relab[x]] = x
        orders = np.array([self._coset_order(int(r), relab) for r in reps])
        return Abelianization(_invariant_factors(orders), relab, int(ncos))

    def _coset_order(self, x: int, coset_of: np.ndarray) -> int:
        y, k = x, 1
        while coset_of[y] != 0:
            y = self.mul(y, x)
            k += 1
        return k

    # ---- scalars, reflections ------------------------------------------
    @cached_property
    def scalar_mask(self) -> np.ndarray:
        d = self.dim
        nums = self.nums
        off = np.ones((d, d), dtype=bool)
        np.fill_diagonal(off, False)
        ok = ~np.any(nums[:, off, :] != 0, axis=(1, 2))
        for i in range(1, d):
            ok &= np.all(nums[:, i, i, :] == nums[:, 0, 0, :], axis=1)
        return ok

    def scalar_subgroup(self) -> "MatrixGroup":
        return self.subgroup_from_mask(self.scalar_mask)

    @property
    def projective_order(self) -> int:
        return self.order // int(self.scalar_mask.sum())

    @cached_property
    def has_reflections(self) -> bool:
        return any(is_reflection(self.element(c.representative)) for c in self.classes[1:])

    def reflection_mask(self) -> np.ndarray:
        mask = np.zeros(self.order, dtype=bool)
        for c in self.classes[1:]:
            if is_reflection(self.element(c.representative)):
                mask[c.members] = True
        return mask

    def projective_element_order(self, x: int) -> int:
        y, k = x, 1
        while not self.scalar_mask[y]:
            y = self.mul(y, x)
            k += 1
        return k

    # ---- normal subgroups -------------------------------------------------
    @cached_property
    def normal_subgroup_masks(self) -> list[np.ndarray]:
        """All normal subgroups, as element masks, from the class lattice."""
        base = []
        seen = set()

        def add(mask):
            key = np.packbits(mask).tobytes()
            if key not in seen:
                seen.add(key)
                base.append(mask)
                return True
            return False

        trivial = np.zeros(self.order, dtype=bool)
        trivial[0] = True
        add(trivial)
        closures = [self.normal_closure_mask([c.representative]) for c in self.classes[1:]]
        for m in closures:
            add(m)
        gens_of = {}

        def gens(mask):
            key = np.packbits(mask).tobytes()
            if key not in gens_of:
                gens_of[key] = self.mask_generators(mask)
            return gens_of[key]

        i = 0
        while i < len(base):
            for m in closures:
                if np.any(m & ~base[i]):
                    perms = [self.right_perm(x) for x in gens(base[i]) + gens(m)]
                    add(self._closure_mask(base[i] | m, perms))
            i += 1
        return sorted(base, key=lambda m: (int(m.sum()), np.flatnonzero(m)[:8].tolist()))

    def normal_subgroups_small_index(self, max_index: int) -> list["MatrixGroup"]:
        out = []
        for m in self.normal_subgroup_masks:
            if self.order // int(m.sum()) <= max_index:
                out.append(self.subgroup_from_mask(m))
        return out


def _invariant_factors(orders) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group from its element orders."""
    n = len(orders)
    per_prime = []
    for p in _prime_factors(n):
        sylow = 1
        while n % (sylow * p) == 0:
            sylow *= p
        ranks = [0]
        while True:
            q = p ** len(ranks)
            cnt = sum(1 for o in orders if q % int(o) == 0)
            ranks.append(round(np.log(cnt) / np.log(p)))
            if cnt == sylow:
                break
        # at_least[i] = number of cyclic factors of order >= p^(i+1)
        at_least = [ranks[i + 1] - ranks[i] for i in range(len(ranks) - 1)] + [0]
        parts = []
        for i in range(len(at_least) - 1):
            parts += [p ** (i + 1)] * (at_least[i] - at_least[i + 1])
        per_prime.append(sorted(parts, reverse=True))
    width = max((len(v) for v in per_prime), default=0)
    inv = []
    for j in range(width):
        f = 1
        for v in per_prime:
            if j < len(v):
                f *= v[j]
        inv.append(f)
    return tuple(sorted(inv))


def _coerce_generators(generators) -> list[GMatrix]:
    gens = [g if isinstance(g, GMatrix) else GMatrix(g) for g in generators]
    if not gens:
        raise ValueError("at least one generator is required")
    d = gens[0].dim
    for g in gens:
        if g.dim != d:
            raise ValueError("generators have different dimensions")
        if g.det().is_zero():
            raise ValueError("generator is singular")
    return gens


def close(generators, limit: int = DEFAULT_LIMIT) -> MatrixGroup:
    """Enumerate the group generated by invertible matrices of finite order."""
    gens = _coerce_generators(generators)
    d = gens[0].dim
    m = 1
    for g in gens:
        m = lcm(m, g.field_order)
    field = PackedField(m)
    phi = field.phi

    def pack(g: GMatrix):
        rows = [[x.promote(field.m) for x in row] for row in g.entries]
        den = 1
        for row in rows:
            for x in row:
                den = lcm(den, x.den)
        arr = np.array([[[c * (den // x.den) for c in x.num] for x in row] for row in rows], dtype=np.int64)
        return _normalize(arr[None], np.array([den], dtype=np.int64))

    packed = [pack(g) for g in gens]
    right_ops = [_right_operator(field, p[0][0]) for p in packed]
    left_ops = [_left_operator(field, p[0][0]) for p in packed]
    gdens = [int(p[1][0]) for p in packed]

    ident = np.zeros((1, d, d, phi), dtype=np.int64)
    for i in range(d):
        ident[0, i, i, 0] = 1
    index = {_keys(ident, np.ones(1, dtype=np.int64))[0]: 0}
    chunks_n, chunks_d = [ident], [np.ones(1, dtype=np.int64)]
    parent, pgen = [-1], [-1]
    rmul_parts: list[list] = [[] for _ in gens]
    frontier_n, frontier_d = ident, np.ones(1, dtype=np.int64)
    frontier_idx = np.array([0])
    while frontier_idx.size:
        new_n, new_d, new_idx = [], [], []
        for s in range(len(gens)):
            prod = _mul_right(frontier_n, right_ops[s])
            pd = frontier_d * gdens[s]
            prod, pd = _normalize(prod, pd)
            _check_bounds(prod, pd)
            keys = _keys(prod, pd)
            targets = np.empty(len(keys), dtype=np.int64)
            fresh = []
            for t, k in enumerate(keys):
                j = index.get(k)
                if j is None:
                    j = len(index)
                    index[k] = j
                    fresh.append(t)
                    parent.append(int(frontier_idx[t]))
                    pgen.append(s)
                targets[t] = j
            rmul_parts[s].append((frontier_idx, targets))
            if fresh:
                fresh = np.array(fresh)
                new_n.append(prod[fresh])
                new_d.append(pd[fresh])
                new_idx.append(targets[fresh])
            if len(index) > limit:
                raise GroupTooLarge(f"group has more than {limit} elements (or is infinite)")
        if not new_idx:
            break
        frontier_n = np.concatenate(new_n)
        frontier_d = np.concatenate(new_d)
        frontier_idx = np.concatenate(new_idx)
        chunks_n.append(frontier_n)
        chunks_d.append(frontier_d)
    nums = np.concatenate(chunks_n)
    dens = np.concatenate(chunks_d)
    n = len(dens)
    rmul = np.zeros((len(gens), n), dtype=np.int64)
    for s, parts in enumerate(rmul_parts):
        for src, dst in parts:
            rmul[s, src] = dst
    lmul = np.zeros((len(gens), n), dtype=np.int64)
    step = 8192
    for s in range(len(gens)):
        for a in range(0, n, step):
            prod = _mul_left(left_ops[s], nums[a : a + step])
            prod, pd = _normalize(np.ascontiguousarray(prod), dens[a : a + step] * gdens[s])
            for t, k in enumerate(_keys(prod, pd)):
                lmul[s, a + t] = index[k]
    g = MatrixGroup(field, d, gens, nums, dens, np.array(parent), np.array(pgen), rmul, lmul)
    g.__dict__["_index"] = index
    return g


def sl_lift(generators) -> list[GMatrix]:
    """Scale each generator into SL by a root of unity; add nothing else.

    For a generator g of finite order with det(g) a root of unity of order k,
    choose lambda = zeta_{k n}^{-j} where det(g) = zeta_k^j and n = dim, so
    det(lambda g) = 1.  The projective image is unchanged.
    """
    out = []
    for g in generators:
        n = g.dim
        dt = g.det()
        k, j = root_of_unity_exponent(dt)
        out.append(g.scale(CycNum.root(k * n, -j)))
    return out


def root_of_unity_exponent(x: CycNum) -> tuple[int, int]:
    """(k, j) with x = zeta_k^j, k minimal; raises if x is not a root of unity."""
    m = x.order
    cand = 2 * m if m % 2 else m
    for j in range(cand):
        if CycNum.root(cand, j) == x:
            k = cand // gcd(cand, j) if j else 1
            return k, (j // (cand // k)) if j else 0
    raise ValueError("not a root of unity")
