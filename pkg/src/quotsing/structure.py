"""Irreducibility, systems of imprimitivity and the twisted-cubic test.

Block search is a semi-decision procedure: every system it returns is
verified against all generators, but failing to find one proves nothing by
itself.  Primitivity is only called certified when the group matches a
catalog entry whose primitivity is known.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, lcm

import numpy as np

from . import linalg
from .chars import (
    ClassData,
    ClassFunction,
    dixon_character_table,
    inner_product,
    linear_characters,
    natural_character,
    sym_power_character,
)
from .exactnum import CycNum, zeta
from .matgroup import GMatrix, MatrixGroup

ZERO = CycNum.rational(0)


def is_transitive(g) -> bool:
    chi = natural_character(g)
    return inner_product(chi, chi) == 1


# ---------------------------------------------------------------------------
# eigenspaces


def eigenvalue_multiplicities(g: MatrixGroup, x: int) -> dict[int, int]:
    """{j: multiplicity of zeta_o^j} for the element x of order o, from the character."""
    chi = natural_character(g)
    c = int(g.class_of[x])
    pw = g.class_powers[c]
    o = len(pw)
    vals = [chi[int(pw[l])] for l in range(o)]
    out = {}
    for j in range(o):
        acc = ZERO
        for l in range(o):
            acc = acc + vals[l] * zeta(o, -j * l)
        m = (acc * CycNum.rational(Fraction(1, o))).to_int()
        if m:
            out[j] = m
    return out


def eigenspaces(g: MatrixGroup, x: int) -> list[tuple[CycNum, list]]:
    """Eigenvalues with bases of their eigenspaces for the element x."""
    mat = g.element(x)
    o = g.element_order(x)
    out = []
    n = g.dim
    for j, mult in sorted(eigenvalue_multiplicities(g, x).items()):
        lam = zeta(o, j)
        rows = [[e - (lam if r == c else 0) for c, e in enumerate(row)] for r, row in enumerate(mat.entries)]
        basis = linalg.nullspace(rows)
        if len(basis) != mult:
            raise ArithmeticError("eigenspace dimension disagrees with the character")
        out.append((lam, basis))
    return out


def _apply(mat: GMatrix, basis) -> list:
    return [linalg.matvec(mat.entries, v) for v in basis]


# ---------------------------------------------------------------------------
# block systems


@dataclass
class BlockSystem:
    blocks: list  # list of bases (lists of vectors)
    block_dim: int
    permutations: list  # per generator, tuple of block images

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def verify(self, g: MatrixGroup) -> bool:
        n = g.dim
        if self.num_blocks * self.block_dim != n:
            return False
        if any(len(b) != self.block_dim for b in self.blocks):
            return False
        if linalg.rank([v for b in self.blocks for v in b]) != n:
            return False
        keys = [linalg.span_key(b) for b in self.blocks]
        for gen, perm in zip(g.generators, self.permutations):
            for i, b in enumerate(self.blocks):
                if linalg.span_key(_apply(gen, b)) != keys[perm[i]]:
                    return False
        return True

    def change_of_basis(self) -> GMatrix:
        """Columns are the concatenated block bases."""
        cols = [v for b in self.blocks for v in b]
        return GMatrix([[cols[c][r] for c in range(len(cols))] for r in range(len(cols))])


class _Orbits:
    def __init__(self, g: MatrixGroup):
        self.g = g
        self.cache: dict = {}

    def orbit(self, basis, limit: int):
        """Orbit of a subspace under the generators, or None once it exceeds limit."""
        key0 = linalg.span_key(basis)
        if key0 in self.cache:
            return self.cache[key0]
        red, _ = linalg.rref(basis)
        members = {key0: red}
        order = [key0]
        queue = [key0]
        while queue:
            k = queue.pop()
            for gen in self.g.generators:
                img = _apply(gen, members[k])
                kk = linalg.span_key(img)
                if kk not in members:
                    members[kk] = linalg.rref(img)[0]
                    order.append(kk)
                    queue.append(kk)
                    if len(members) > limit:
                        self.cache[key0] = None
                        return None
        result = [members[k] for k in order]
        for k in order:
            self.cache[k] = result
        return result


def _permutations(g: MatrixGroup, blocks) -> list:
    keys = [linalg.span_key(b) for b in blocks]
    where = {k: i for i, k in enumerate(keys)}
    out = []
    for gen in g.generators:
        out.append(tuple(where[linalg.span_key(_apply(gen, b))] for b in blocks))
    return out


def _commuting(g: MatrixGroup, a: int, b: int) -> bool:
    return g.mul(a, b) == g.mul(b, a)


def _seed_spaces(g: MatrixGroup, d: int, r: int):
    """Candidate block subspaces of dimension d, in a fixed order."""
    n = g.dim
    reps = [c.representative for c in g.classes if not g.scalar_mask[c.representative]]
    eig = {x: eigenspaces(g, x) for x in reps}
    for x in reps:
        for _, b in eig[x]:
            if len(b) == d:
                yield b
    for i, x in enumerate(reps):
        for y in reps[i + 1 :]:
            if not _commuting(g, x, y):
                continue
            for _, bx in eig[x]:
                for _, by in eig[y]:
                    inter = linalg.intersect(bx, by, n)
                    if len(inter) == d:
                        yield inter
    for mask in g.normal_subgroup_masks:
        size = int(mask.sum())
        if size == 1 or g.order // size > factorial(r):
            continue
        spaces = [[[1 if i == j else 0 for j in range(n)] for i in range(n)]]
        for k in g.mask_generators(mask):
            refined = []
            for s in spaces:
                for _, b in eigenspaces(g, k):
                    inter = linalg.intersect(s, b, n)
                    if inter:
                        refined.append(inter)
            spaces = refined
        for s in spaces:
            if len(s) == d:
                yield s
            elif len(s) > d and d == 1:
                for x in reps:
                    for _, b in eig[x]:
                        inter = linalg.intersect(s, b, n)
                        if len(inter) == 1:
                            yield inter


def find_block_system(g: MatrixGroup) -> BlockSystem | None:
    """Search for a system of imprimitivity; any result is verified."""
    n = g.dim
    if n < 2:
        return None
    orbits = _Orbits(g)
    for r in range(2, n + 1):
        if n % r:
            continue
        d = n // r
        partial = []
        seen = set()
        for seed in _seed_spaces(g, d, r):
            key = linalg.span_key(seed)
            if key in seen:
                continue
            orb = orbits.orbit(seed, r)
            if orb is None:
                continue
            for b in orb:
                seen.add(linalg.span_key(b))
            if linalg.rank([v for b in orb for v in b]) != len(orb) * d:
                continue
            if len(orb) == r:
                system = BlockSystem(orb, d, _permutations(g, orb))
                if system.verify(g):
                    return system
            else:
                partial.append(orb)
                combined = _combine(partial, r, d, n)
                if combined is not None:
                    system = BlockSystem(combined, d, _permutations(g, combined))
                    if system.verify(g):
                        return system
    return None


def _combine(partial, r: int, d: int, n: int):
    """Union of invariant orbit families whose blocks form a direct sum of total size r."""
    latest = partial[-1]
    others = partial[:-1]
    for size in range(1, len(others) + 1):
        for combo in combinations(others, size):
            blocks = latest + [b for orb in combo for b in orb]
            if len(blocks) != r:
                continue
            if linalg.rank([v for b in blocks for v in b]) == n:
                return blocks
    return None


@dataclass
class Primitivity:
    state: str  # "imprimitive", "primitive-certified", "primitive-uncertified"
    reason: str
    blocks: BlockSystem | None = None

    @property
    def is_primitive(self) -> bool | None:
        if self.state == "imprimitive":
            return False
        if self.state == "primitive-certified":
            return True
        return None


def restriction_is_irreducible(g: MatrixGroup, mask: np.ndarray) -> bool:
    """Is the natural representation irreducible on the subgroup marked by mask?"""
    chi = natural_character(g)
    members = np.flatnonzero(mask)
    counts = np.bincount(g.class_of[members], minlength=len(g.classes))
    total = ZERO
    for c, k in enumerate(counts):
        if k:
            total = total + chi[c] * chi[c].conj() * int(k)
    return total == len(members)


def irreducible_normal_certificate(g: MatrixGroup) -> str | None:
    """Reason string if every normal subgroup of small index acts irreducibly.

    If g permuted r blocks, the kernel of that action would be a normal
    subgroup of index at most r! preserving each block, hence reducible.
    """
    n = g.dim
    bound = max((factorial(r) for r in range(2, n + 1) if n % r == 0), default=0)
    if bound == 0:
        return None
    checked = 0
    for mask in g.normal_subgroup_masks:
        size = int(mask.sum())
        if g.order // size > bound:
            continue
        if not restriction_is_irreducible(g, mask):
            return None
        checked += 1
    return f"all {checked} normal subgroups of index <= {bound} act irreducibly"


def primitivity_verdict(g, catalog_name: str | None = None, declared_primitive: bool | None = None) -> Primitivity:
    """Imprimitive with a certificate, primitive certified by the catalog, or uncertified."""
    if isinstance(g, ClassData):
        if declared_primitive or g.declared.get("primitive"):
            return Primitivity("primitive-certified", f"catalog entry {catalog_name or g.name}")
        return Primitivity("primitive-uncertified", "fixture without matrix model")
    if not is_transitive(g):
        blocks = find_block_system(g)
        return Primitivity("imprimitive", "the natural representation is reducible", blocks)
    certificate = irreducible_normal_certificate(g)
    if certificate is not None:
        return Primitivity("primitive-certified", certificate)
    blocks = find_block_system(g)
    if blocks is not None:
        return Primitivity("imprimitive", f"block system with {blocks.num_blocks} blocks of dimension {blocks.block_dim}", blocks)
    if catalog_name is None:
        from .catalog import identify, declared

        catalog_name = identify(g)
        if catalog_name is not None:
            declared_primitive = declared(catalog_name).get("primitive")
    if catalog_name is not None and declared_primitive:
        return Primitivity("primitive-certified", f"catalog entry {catalog_name}")
    if catalog_name is not None and declared_primitive is False:
        return Primitivity("primitive-uncertified", f"catalog entry {catalog_name} is declared imprimitive but no block system was found")
    return Primitivity("primitive-uncertified", "block search exhausted without a catalog match")


# ---------------------------------------------------------------------------
# twisted cubic


def _could_act_on_a_line(g) -> bool:
    """A group acting faithfully on P^1 is cyclic, dihedral or of order at most 60.

    Groups of PGL(2) either have projective order <= 60 or contain a cyclic
    subgroup of index at most two; failing both rules out an invariant
    twisted cubic (the action on the curve would be faithful).
    """
    if g.projective_order <= 60:
        return True
    if isinstance(g, ClassData):
        best = max(g.projective_element_orders)
    else:
        best = max(g.projective_element_order(c.representative) for c in g.classes)
    return 2 * best >= g.projective_order


def invariant_twisted_cubic_exists(g) -> bool:
    """Is the natural 4-dim representation, up to a linear twist, Sym^3 of a 2-dim irreducible?"""
    if g.dim != 4:
        raise ValueError("the twisted-cubic test needs a 4-dimensional group")
    if not _could_act_on_a_line(g):
        return False
    if isinstance(g, ClassData):
        raise ValueError(f"fixture {g.name} is too small for the order filter and has no character table")
    chi = natural_character(g)
    table = dixon_character_table(g)
    lins = linear_characters(g)
    for psi in table.characters:
        if psi.degree != 2:
            continue
        s3 = sym_power_character(psi, 3)
        for mu in lins:
            if chi * mu == s3:
                return True
    return False
