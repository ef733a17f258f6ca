"""Named groups with validated constructions and declared properties.

Matrix models are assembled from explicit generators and checked on
construction (orders, normalizer conditions, quotient maps).  Groups without
a usable matrix model ship as class-data fixtures; two more are recorded
only by their declared properties.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import product
from math import comb, gcd, lcm

import numpy as np

from .chars import ClassData, natural_character
from .exactnum import CycNum, as_cyc, parse_cyc, sqrt_of_int, zeta
from .matgroup import GMatrix, MatrixGroup, close, sl_lift


class UnknownGroup(KeyError):
    """No catalog entry with that name."""


class NoMatrixModel(LookupError):
    """The entry is recorded by its declared properties only."""


class CatalogValidationError(RuntimeError):
    """A construction failed one of its built-in checks."""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dim: int
    order: int
    summary: str
    model: str  # "matrix", "fixture" or "declared"
    primitive: bool | None
    transitive: bool | None
    exceptional: str  # "yes" or "no"
    weakly_exceptional: str | None
    min_degree: int | None = None  # exact minimal semi-invariant degree of this model
    no_semiinvariants_up_to: int | None = None  # declared: none of degree <= this
    citation: str = ""
    segre: bool = False
    same_as: str | None = None


_ENTRIES = [
    # dimension 2
    CatalogEntry("binary_tetrahedral", 2, 24, "binary tetrahedral group 2.A4 in SL(2)", "matrix", True, True, "yes", "yes", 4, 2, "dim2.classification"),
    CatalogEntry("binary_octahedral", 2, 48, "binary octahedral group 2.S4 in SL(2)", "matrix", True, True, "yes", "yes", 6, 2, "dim2.classification"),
    CatalogEntry("binary_icosahedral", 2, 120, "binary icosahedral group 2.A5 in SL(2)", "matrix", True, True, "yes", "yes", 12, 4, "dim2.classification"),
    CatalogEntry("binary_dihedral_12", 2, 12, "binary dihedral (dicyclic) group of order 12", "matrix", False, True, "no", "yes", 2, None, "dim2.classification"),
    # dimension 3
    CatalogEntry("klein_168", 3, 168, "PSL(2,7) in SL(3) (Klein quartic group)", "matrix", True, True, "yes", "yes", 4, 3, "dim3.classification"),
    CatalogEntry("hessian_648", 3, 648, "Hessian group: normalizer of H(3,F3) in SL(3)", "matrix", True, True, "yes", "yes", 6, 3, "dim3.classification"),
    CatalogEntry("hessian_216", 3, 216, "index-3 normal subgroup of the Hessian group containing H(3,F3)", "matrix", True, True, "yes", "yes", 6, 3, "dim3.classification"),
    CatalogEntry("icosahedral_so3", 3, 60, "A5 in SO(3), the symmetric square of the binary icosahedral group", "matrix", True, True, "no", "no", 2, None, "real.quadric"),
    # dimension 4
    CatalogEntry("H", 4, 32, "extraspecial 2-group generated by four monomial matrices", "matrix", False, True, "no", "no", 2, None, "primitive.necessary"),
    CatalogEntry("Htilde", 4, 64, "H extended by the scalar sqrt(-1)", "matrix", False, True, "no", "no", 2, None, "primitive.necessary"),
    CatalogEntry("N", 4, 46080, "normalizer of Htilde in SL(4); N/Htilde = S6", "matrix", True, True, "yes", "yes", 8, 4, "dim4.classification"),
    CatalogEntry("13", 4, 320, "preimage of Z5 = <(24635)>", "matrix", True, True, "no", "yes", 4, None, "dim4.classification"),
    CatalogEntry("14", 4, 640, "preimage of Z5 x| Z2", "matrix", True, True, "no", "yes", 4, None, "dim4.classification"),
    CatalogEntry("15", 4, 1280, "preimage of Z5 x| Z4", "matrix", True, True, "no", "yes", 4, None, "dim4.classification"),
    CatalogEntry("16", 4, 3840, "preimage of a point-stabilizing A5", "matrix", True, True, "no", "yes", 4, None, "dim4.classification"),
    CatalogEntry("17", 4, 3840, "preimage of a transitive A5", "matrix", True, True, "yes", "yes", 8, 4, "dim4.classification"),
    CatalogEntry("18", 4, 7680, "preimage of a point-stabilizing S5", "matrix", True, True, "no", "yes", 4, None, "dim4.classification"),
    CatalogEntry("19", 4, 7680, "preimage of a transitive S5", "matrix", True, True, "yes", "yes", 8, 4, "dim4.classification"),
    CatalogEntry("20", 4, 23040, "preimage of A6", "matrix", True, True, "yes", "yes", 8, 4, "dim4.classification"),
    CatalogEntry("21", 4, 46080, "preimage of S6 (the whole of N)", "matrix", True, True, "yes", "yes", 8, 4, "dim4.classification", same_as="N"),
    CatalogEntry("2A5_sym3", 4, 120, "SL(2,5) acting on binary cubics", "matrix", True, True, "no", "no", 4, None, "twisted-cubic.lct-below-5/6"),
    CatalogEntry("sl27_dim4", 4, 336, "SL(2,7) on the even part of its Weil representation", "matrix", True, True, "no", "yes", 4, None, "dim4.weakly"),
    CatalogEntry("gamma_x_gamma", 4, 14400, "block-diagonal product of two binary icosahedral groups", "matrix", False, False, "no", "no", 12, 4, "transitive.necessary-for-weakly"),
    CatalogEntry("segre_gamma_gamma", 4, 7200, "binary icosahedral pair acting on 2x2 matrices by g1 M g2^-1", "matrix", True, True, "no", "no", 2, None, "segre.lct-below-1", segre=True),
    CatalogEntry("2A6-fixture", 4, 720, "2.A6 in SL(4), class data by element types", "fixture", True, True, "yes", "yes", 8, 4, "dim4.classification"),
    CatalogEntry("2S6-fixture", 4, 1440, "2.S6 in SL(4), class data", "fixture", True, True, "yes", "yes", 8, 4, "dim4.classification"),
    CatalogEntry("2A7-fixture", 4, 5040, "2.A7 in SL(4), class data", "fixture", True, True, "yes", "yes", 8, 4, "dim4.classification"),
    CatalogEntry("O5F3", 4, 51840, "Sp(4,3) in SL(4), projectively [O(5,F3),O(5,F3)]", "declared", True, True, "yes", "yes", 12, 4, "dim4.classification"),
    CatalogEntry("ST32", 4, 155520, "Shephard-Todd reflection group number 32", "declared", True, True, "no", None, None, None, "reflections.reduce"),
    # dimension 5
    CatalogEntry("heisenberg5", 5, 125, "Heisenberg group H(3,F5) in its Schroedinger representation", "matrix", False, True, "no", None, 5, 4, "primitive.necessary"),
    CatalogEntry("HM", 5, 15000, "normalizer of the Heisenberg group in SL(5)", "matrix", True, True, "yes", "yes", 10, 5, "dim5.classification"),
    CatalogEntry("HM_index5", 5, 3000, "index-5 subgroup of HM: preimage of 2.A4", "matrix", True, True, "yes", "yes", 10, 5, "dim5.classification"),
    CatalogEntry("HM_beta_cyclic", 5, 500, "preimage in HM of a cyclic subgroup of order 4", "matrix", False, True, "no", None, 5, 4, "dim5.classification"),
]

ENTRIES: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}
NAMES: list[str] = [e.name for e in _ENTRIES]


def entry(name: str) -> CatalogEntry:
    try:
        return ENTRIES[name]
    except KeyError:
        raise UnknownGroup(name) from None


def declared(name: str) -> dict:
    return asdict(entry(name))


def matrix_names() -> list[str]:
    return [e.name for e in _ENTRIES if e.model == "matrix"]


# ---------------------------------------------------------------------------
# small matrix helpers


def shift_matrix(p: int) -> GMatrix:
    """e_j -> e_{j+1 mod p}."""
    return GMatrix([[1 if i == (j + 1) % p else 0 for j in range(p)] for i in range(p)])


def sym_power_matrix(g: GMatrix, d: int) -> GMatrix:
    """Action of a 2x2 matrix on binary forms of degree d (monomials x^(d-k) y^k)."""
    (a, b), (c, e) = g.entries
    cols = []
    for k in range(d + 1):
        # (a x + c y)^(d-k) (b x + e y)^k expanded in the monomial basis
        first = [comb(d - k, i) * a ** (d - k - i) * c**i for i in range(d - k + 1)]
        second = [comb(k, i) * b ** (k - i) * e**i for i in range(k + 1)]
        col = [CycNum.rational(0)] * (d + 1)
        for i, u in enumerate(first):
            for j, v in enumerate(second):
                col[i + j] = col[i + j] + u * v
        cols.append(col)
    return GMatrix([[cols[c][r] for c in range(d + 1)] for r in range(d + 1)])


def _icosahedral_generators() -> list[GMatrix]:
    e = zeta(5)
    r5 = sqrt_of_int(5)
    s = GMatrix.diag([e**3, e**2])
    t = GMatrix([[-(e - e**4) / r5, (e**2 - e**3) / r5], [(e**2 - e**3) / r5, (e - e**4) / r5]])
    return [s, t]


def _expect_order(g: MatrixGroup, order: int, name: str) -> MatrixGroup:
    if g.order != order:
        raise CatalogValidationError(f"{name}: expected order {order}, closure gave {g.order}")
    g.name = name
    return g


def _expect_sl(gens, name: str):
    for m in gens:
        if m.det() != 1:
            raise CatalogValidationError(f"{name}: generator has determinant {m.det()}")
    return gens


# ---------------------------------------------------------------------------
# Heisenberg coordinates and quotient maps


def _projective_key(m: GMatrix):
    flat = [x for row in m.entries for x in row]
    lead = next(x for x in flat if not x.is_zero())
    inv = lead.inv()
    return tuple((x * inv).minimal() for x in flat)


def _heisenberg_lookup(basis: list[GMatrix], modulus: int) -> dict:
    """Key of prod basis[i]^(v_i), up to scalars -> exponent vector v."""
    n = basis[0].dim
    table = {}
    for v in product(range(modulus), repeat=len(basis)):
        m = GMatrix.identity(n)
        for b, k in zip(basis, v):
            for _ in range(k):
                m = m @ b
        table[_projective_key(m)] = v
    return table


def _conjugation_matrix(g: GMatrix, basis: list[GMatrix], table: dict) -> list[tuple]:
    """Exponent vectors of g b g^-1 for each basis element b (columns of the induced linear map)."""
    ginv = g.inverse()
    out = []
    for b in basis:
        key = _projective_key(g @ b @ ginv)
        if key not in table:
            raise CatalogValidationError("element does not normalize the Heisenberg group")
        out.append(table[key])
    return out


def propagate(group: MatrixGroup, gen_images: list, compose) -> list:
    """Images of all elements under a homomorphism given on generators.

    Element x is parent[x] * generator[pgen[x]], so its image is
    compose(image(parent), image(generator)).
    """
    images = [None] * group.order
    images[0] = compose(gen_images[0], None)
    for x in range(1, group.order):
        images[x] = compose(images[int(group.parent[x])], gen_images[int(group.pgen[x])])
    return images


def _perm_compose(a, b):
    if b is None:
        return tuple(range(len(a)))
    return tuple(a[i] for i in b)


def _sl2_compose(p: int):
    def compose(a, b):
        if b is None:
            return (1, 0, 0, 1)
        return (
            (a[0] * b[0] + a[1] * b[2]) % p,
            (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p,
            (a[2] * b[1] + a[3] * b[3]) % p,
        )

    return compose


def _closure(gens, compose, identity) -> set:
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = compose(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _short_generators(elements, compose, identity) -> list:
    gens, current = [], {identity}
    for x in sorted(elements):
        if x not in current:
            gens.append(x)
            current = _closure(gens, compose, identity)
        if len(current) == len(elements):
            break
    return gens


def _preimage(group: MatrixGroup, images: list, kernel_gens: list[int], target_gens: list, name: str) -> MatrixGroup:
    first = {}
    for x, img in enumerate(images):
        first.setdefault(img, x)
    lifts = [first[t] for t in target_gens]
    return group.subgroup(kernel_gens + lifts, name=name)


# ---------------------------------------------------------------------------
# dimension 4: the Pauli-type group, N and the subgroups 13-21

PAULI_X = GMatrix([[0, 1], [1, 0]])
PAULI_Z = GMatrix.diag([1, -1])

# the four generators of H in the order X1, X2, Z1, Z2 (first/second tensor factor)
H_GENERATORS = [
    GMatrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]),
    GMatrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
    GMatrix.diag([1, 1, -1, -1]),
    GMatrix.diag([1, -1, 1, -1]),
]

# symplectic basis X1, Z1, X2, Z2 of Htilde / scalars and the duads of {0..5} they stand for
_PAULI_BASIS = [H_GENERATORS[0], H_GENERATORS[2], H_GENERATORS[1], H_GENERATORS[3]]
_DUAD_OF_BASIS = [(0, 1), (1, 2), (3, 4), (4, 5)]


def _normalizer_generators_4() -> list[GMatrix]:
    i = zeta(4)
    w = zeta(8)
    r2 = sqrt_of_int(2)
    one = GMatrix.identity(2)
    hadamard = GMatrix([[1, 1], [1, -1]]).scale(r2.inv())
    phase = GMatrix.diag([1, i])
    cz = GMatrix.diag([1, 1, 1, -1])
    return [
        hadamard.kron(one),
        one.kron(hadamard),
        phase.kron(one).scale(w),
        cz.scale(w),
    ]


def _vector_to_duad() -> dict:
    out = {}
    for v in product(range(2), repeat=4):
        s = set()
        for bit, (a, b) in zip(v, _DUAD_OF_BASIS):
            if bit:
                s ^= {a, b}
        if len(s) == 4:
            s = set(range(6)) - s
        out[v] = tuple(sorted(s))
    return out


def _symplectic_to_permutation(columns: list[tuple]) -> tuple:
    """Permutation of {0..5} inducing the given linear map of F2^4 on duads."""
    to_duad = _vector_to_duad()
    from_duad = {d: v for v, d in to_duad.items()}

    def apply(v):
        out = [0, 0, 0, 0]
        for bit, col in zip(v, columns):
            if bit:
                out = [(a + b) % 2 for a, b in zip(out, col)]
        return tuple(out)

    perm = []
    for p in range(6):
        star = {to_duad[apply(from_duad[tuple(sorted((p, q)))])] for q in range(6) if q != p}
        common = set.intersection(*(set(d) for d in star))
        if len(common) != 1:
            raise CatalogValidationError("conjugation action is not induced by a permutation")
        perm.append(common.pop())
    return tuple(perm)


def beta_s6(group: MatrixGroup) -> list[tuple]:
    """The quotient map N -> S6 on every element of a group normalizing Htilde."""
    table = _heisenberg_lookup(_PAULI_BASIS, 2)
    gen_images = [_symplectic_to_permutation(_conjugation_matrix(g, _PAULI_BASIS, table)) for g in group.generators]
    return propagate(group, gen_images, _perm_compose)


def _cycles_to_perm(cycles, n: int = 6) -> tuple:
    """Permutation of {0..n-1} from 1-based cycles."""
    p = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a - 1] = b - 1
    return tuple(p)


# (label, generators of beta(G) in S6 as 1-based cycles, expected splitting type on W)
SPLITTING_TABLE = [
    ("13", [[(2, 4, 6, 3, 5)]], [1, 1, 1, 1, 1]),
    ("14", [[(2, 4, 6, 3, 5)], [(3, 6), (4, 5)]], [1, 2, 2]),
    ("15", [[(2, 4, 6, 3, 5)], [(3, 4, 6, 5)]], [1, 2, 2]),
    ("16", [[(2, 4, 6, 3, 5)], [(3, 4), (5, 6)]], [1, 4]),
    ("17", [[(2, 4, 6, 3, 5)], [(1, 2), (3, 6)]], [5]),
    ("18", [[(2, 4, 6, 3, 5)], [(5, 6)]], [1, 4]),
    ("19", [[(2, 4, 6, 3, 5)], [(1, 2), (3, 4), (5, 6)]], [5]),
    ("20", [[(2, 4, 6, 3, 5)], [(1, 2), (3, 4)]], [5]),
    ("21", [[(2, 4, 6, 3, 5)], [(1, 2)]], [5]),
]

# The outer automorphism of S6 on transpositions, realised through synthemes:
# (ab) maps to the product of three disjoint transpositions forming a syntheme.
_SYNTHEMES = [
    ((0, 1), (2, 3), (4, 5)),
    ((0, 1), (2, 4), (3, 5)),
    ((0, 1), (2, 5), (3, 4)),
    ((0, 2), (1, 3), (4, 5)),
    ((0, 2), (1, 4), (3, 5)),
    ((0, 2), (1, 5), (3, 4)),
    ((0, 3), (1, 2), (4, 5)),
    ((0, 3), (1, 4), (2, 5)),
    ((0, 3), (1, 5), (2, 4)),
    ((0, 4), (1, 2), (3, 5)),
    ((0, 4), (1, 3), (2, 5)),
    ((0, 4), (1, 5), (2, 3)),
    ((0, 5), (1, 2), (3, 4)),
    ((0, 5), (1, 3), (2, 4)),
    ((0, 5), (1, 4), (2, 3)),
]


def _totals() -> list[frozenset]:
    """The six synthematic totals: sets of five synthemes covering all 15 duads."""
    out = []
    syn = [frozenset(s) for s in _SYNTHEMES]

    def extend(chosen, used, start):
        if len(chosen) == 5:
            out.append(frozenset(chosen))
            return
        for k in range(start, len(syn)):
            if not (syn[k] & used):
                extend(chosen + [syn[k]], used | syn[k], k + 1)

    extend([], frozenset(), 0)
    return out


def outer_automorphism(perm: tuple) -> tuple:
    """Image of a permutation of {0..5} under the outer automorphism (action on totals)."""
    totals = _totals()
    index = {t: i for i, t in enumerate(totals)}

    def move(t):
        return frozenset(frozenset(tuple(sorted((perm[a], perm[b]))) for a, b in s) for s in t)

    return tuple(index[move(t)] for t in totals)


def n_generators() -> list[GMatrix]:
    """Htilde generators followed by the four normalizer generators, all in SL(4)."""
    return _expect_sl(H_GENERATORS + [GMatrix.scalar(4, zeta(4))] + _normalizer_generators_4(), "N")


@lru_cache(maxsize=None)
def _n_data():
    n = _expect_order(close(n_generators()), 46080, "N")
    images = beta_s6(n)
    return n, images


def _htilde_indices(n: MatrixGroup) -> list[int]:
    return [int(n.rmul[s, 0]) for s in range(5)]


# The duad labelling of F2^4 above differs from the tabulated point labels by
# the outer automorphism of S6: without the twist, the point-stabilising and
# transitive A5 (and S5) rows trade places.
LABELLING_TWIST = True


def _subgroup_of_n(label: str) -> MatrixGroup:
    n, images = _n_data()
    row = next(r for r in SPLITTING_TABLE if r[0] == label)
    perms = [_cycles_to_perm(c) for c in row[1]]
    if LABELLING_TWIST:
        perms = [outer_automorphism(p) for p in perms]
    target = _closure(perms, _perm_compose, tuple(range(6)))
    g = _preimage(n, images, _htilde_indices(n), perms, label)
    return _expect_order(g, 64 * len(target), label)


# ---------------------------------------------------------------------------
# dimension 5: Heisenberg group and its normalizer


def heisenberg_generators(p: int = 5) -> list[GMatrix]:
    z = zeta(p)
    return [shift_matrix(p), GMatrix.diag([z ** ((j + 1) % p) for j in range(p)])]


def _hm_extra_generators() -> list[GMatrix]:
    p = 5
    z = zeta(p)
    r5 = sqrt_of_int(p)
    fourier = GMatrix([[z ** (j * k) for k in range(p)] for j in range(p)]).scale(r5.inv())
    half = pow(2, -1, p)
    phase = GMatrix.diag([z ** (half * j * j % p) for j in range(p)])
    return sl_lift([fourier, phase])


def beta_sl2(group: MatrixGroup, p: int = 5) -> list[tuple]:
    """The quotient map onto SL(2,F_p) from the conjugation action on the Heisenberg group."""
    basis = heisenberg_generators(p)
    table = _heisenberg_lookup(basis, p)
    gen_images = []
    for g in group.generators:
        (a, c), (b, d) = _conjugation_matrix(g, basis, table)
        gen_images.append((a, b, c, d))
    return propagate(group, gen_images, _sl2_compose(p))


@lru_cache(maxsize=None)
def _hm_data():
    gens = _expect_sl(heisenberg_generators() + _hm_extra_generators(), "HM")
    hm = _expect_order(close(gens), 15000, "HM")
    images = beta_sl2(hm)
    if len(set(images)) != 120:
        raise CatalogValidationError("HM does not map onto SL(2,5)")
    return hm, images


def _sl2_elements(p: int) -> list[tuple]:
    return [v for v in product(range(p), repeat=4) if (v[0] * v[3] - v[1] * v[2]) % p == 1]


def binary_tetrahedral_in_sl25() -> set:
    """Normalizer of a quaternion subgroup of SL(2,5): a copy of 2.A4."""
    compose = _sl2_compose(5)
    ident = (1, 0, 0, 1)
    q8 = _closure([(2, 0, 0, 3), (0, 1, 4, 0)], compose, ident)

    def inverse(a):
        return (a[3], -a[1] % 5, -a[2] % 5, a[0])

    return {g for g in _sl2_elements(5) if {compose(compose(g, h), inverse(g)) for h in q8} == q8}


def _hm_subgroup(target: set, name: str) -> MatrixGroup:
    hm, images = _hm_data()
    compose = _sl2_compose(5)
    gens = _short_generators(target, compose, (1, 0, 0, 1))
    g = _preimage(hm, images, [int(hm.rmul[s, 0]) for s in range(2)], gens, name)
    return _expect_order(g, 125 * len(target), name)


# ---------------------------------------------------------------------------
# dimension 3


def _klein_generators() -> list[GMatrix]:
    z = zeta(7)
    s = GMatrix.diag([z**4, z**2, z])
    t = GMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    a, b, c = z - z**6, z**2 - z**5, z**4 - z**3
    root = sqrt_of_int(-7)
    r = GMatrix([[a, b, c], [b, c, a], [c, a, b]]).scale(root.inv())
    if r.det() != 1:
        r = -r
    return [s, t, r]


def _hessian_generators() -> list[GMatrix]:
    w = zeta(3)
    fourier = GMatrix([[w ** (j * k) for k in range(3)] for j in range(3)]).scale(sqrt_of_int(-3).inv())
    phase = GMatrix.diag([w ** (2 * j * j % 3) for j in range(3)])
    return [shift_matrix(3), GMatrix.diag([1, w, w**2])] + sl_lift([fourier, phase])


@lru_cache(maxsize=None)
def _hessian() -> MatrixGroup:
    return _expect_order(close(_expect_sl(_hessian_generators(), "hessian_648")), 648, "hessian_648")


def _hessian_216() -> MatrixGroup:
    hes = _hessian()
    heis = hes.generated_mask([int(hes.rmul[0, 0]), int(hes.rmul[1, 0])])
    found = [m for m in hes.normal_subgroup_masks if int(m.sum()) == 216 and bool(np.all(m[heis]))]
    if len(found) != 1:
        raise CatalogValidationError(f"expected one index-3 normal subgroup containing H(3,F3), found {len(found)}")
    return _expect_order(hes.subgroup_from_mask(found[0]), 216, "hessian_216")


# ---------------------------------------------------------------------------
# other dimension-4 models


def _weil_even_sl27() -> list[GMatrix]:
    """SL(2,7) on even functions on F7, basis e0, e1+e6, e2+e5, e3+e4."""
    p = 7
    z = zeta(p)
    half = pow(2, -1, p)
    phase = GMatrix.diag([z ** (half * j * j % p) for j in range(4)])
    cols = []
    for j in range(4):
        if j == 0:
            col = [1, 1, 1, 1]
        else:
            col = [2] + [z ** (i * j % p) + z ** (-i * j % p) for i in range(1, 4)]
        cols.append(col)
    fourier = GMatrix([[cols[c][r] for c in range(4)] for r in range(4)]).scale(sqrt_of_int(-7).inv())
    return sl_lift([fourier, phase])


def _sl27_group() -> MatrixGroup:
    base = _weil_even_sl27()
    i = zeta(4)
    for a, b in product(range(4), repeat=2):
        gens = [base[0].scale(i**a), base[1].scale(i**b)]
        g = close(gens, limit=4 * 336)
        if g.order == 336:
            return _expect_order(g, 336, "sl27_dim4")
    raise CatalogValidationError("no scalar adjustment of the Weil generators gives SL(2,7)")


def _tensor_action(a: GMatrix, b: GMatrix) -> GMatrix:
    """M -> a M b^-1 on 2x2 matrices, in the basis of matrix units (row-major)."""
    return a.kron(b.inverse().transpose())


# ---------------------------------------------------------------------------
# builders


def _build_matrix(name: str) -> MatrixGroup:
    i = zeta(4)
    if name == "binary_tetrahedral":
        gens = [GMatrix.diag([i, -i]), GMatrix([[0, 1], [-1, 0]]),
                GMatrix([[1 + i, 1 + i], [-1 + i, 1 - i]]).scale(Fraction(1, 2))]
        return _expect_order(close(_expect_sl(gens, name)), 24, name)
    if name == "binary_octahedral":
        w = zeta(8)
        gens = [GMatrix([[0, 1], [-1, 0]]), GMatrix.diag([w, w**7]),
                GMatrix([[1 + i, 1 + i], [-1 + i, 1 - i]]).scale(Fraction(1, 2))]
        return _expect_order(close(_expect_sl(gens, name)), 48, name)
    if name == "binary_icosahedral":
        return _expect_order(close(_expect_sl(_icosahedral_generators(), name)), 120, name)
    if name == "binary_dihedral_12":
        u = zeta(6)
        gens = [GMatrix.diag([u, u**5]), GMatrix([[0, 1], [-1, 0]])]
        return _expect_order(close(_expect_sl(gens, name)), 12, name)
    if name == "klein_168":
        return _expect_order(close(_expect_sl(_klein_generators(), name), limit=1000), 168, name)
    if name == "hessian_648":
        return _hessian()
    if name == "hessian_216":
        return _hessian_216()
    if name == "icosahedral_so3":
        gens = [sym_power_matrix(g, 2) for g in _icosahedral_generators()]
        return _expect_order(close(_expect_sl(gens, name)), 60, name)
    if name == "H":
        return _expect_order(close(_expect_sl(H_GENERATORS, name)), 32, name)
    if name == "Htilde":
        return _expect_order(close(H_GENERATORS + [GMatrix.scalar(4, i)]), 64, name)
    if name == "N":
        return _n_data()[0]
    if name in {r[0] for r in SPLITTING_TABLE}:
        return _subgroup_of_n(name)
    if name == "2A5_sym3":
        gens = [sym_power_matrix(g, 3) for g in _icosahedral_generators()]
        return _expect_order(close(_expect_sl(gens, name)), 120, name)
    if name == "sl27_dim4":
        return _sl27_group()
    if name == "gamma_x_gamma":
        one = GMatrix.identity(2)
        s, t = _icosahedral_generators()
        gens = [s.block_diag(one), t.block_diag(one), one.block_diag(s), one.block_diag(t)]
        return _expect_order(close(gens), 14400, name)
    if name == "segre_gamma_gamma":
        one = GMatrix.identity(2)
        s, t = _icosahedral_generators()
        gens = [_tensor_action(s, one), _tensor_action(t, one), _tensor_action(one, s), _tensor_action(one, t)]
        return _expect_order(close(_expect_sl(gens, name)), 7200, name)
    if name == "heisenberg5":
        return _expect_order(close(heisenberg_generators()), 125, name)
    if name == "HM":
        return _hm_data()[0]
    if name == "HM_index5":
        return _hm_subgroup(binary_tetrahedral_in_sl25(), name)
    if name == "HM_beta_cyclic":
        return _hm_subgroup(_closure([(0, 1, 4, 0)], _sl2_compose(5), (1, 0, 0, 1)), name)
    raise UnknownGroup(name)


@lru_cache(maxsize=None)
def _build_cached(name: str):
    e = entry(name)
    if e.model == "declared":
        raise NoMatrixModel(f"{name} is recorded by its declared properties only")
    if e.model == "fixture":
        return load_fixture(name)
    return _build_matrix(name)


def build(name: str):
    """The catalog group: a MatrixGroup, or ClassData for fixture entries."""
    return _build_cached(name)


# ---------------------------------------------------------------------------
# class-data fixtures


def _fixture_file(name: str) -> str:
    return name.replace("-fixture", "") + ".json"


def read_fixture_json(name: str) -> dict:
    text = resources.files("quotsing").joinpath("data", _fixture_file(name)).read_text()
    return json.loads(text)


def class_data_from_json(doc: dict) -> ClassData:
    m = doc["root_order"]
    types = doc["types"]
    labels = [t["label"] for t in types]
    pos = {lab: i for i, lab in enumerate(labels)}
    powers: dict[int, list[int]] = {}
    for t in types:
        for k, target in t["powers"].items():
            if target not in pos:
                raise CatalogValidationError(f"{doc['name']}: power map of {t['label']} names unknown type {target!r}")
            powers.setdefault(int(k), []).append(pos[target])
    if any(len(v) != len(types) for v in powers.values()):
        raise CatalogValidationError(f"{doc['name']}: incomplete power maps")
    if doc["identity"] not in pos:
        raise CatalogValidationError(f"{doc['name']}: identity type {doc['identity']!r} is missing")
    linear = None
    if "linear" in doc:
        linear = [[parse_cyc(str(v), m) for v in row] for row in doc["linear"]]
    data = ClassData(
        name=doc["name"],
        dim=doc["dimension"],
        order=doc["order"],
        labels=labels,
        class_sizes=[t["size"] for t in types],
        natural=[parse_cyc(str(t["chi"]), m) for t in types],
        powers=powers,
        identity_class=pos[doc["identity"]],
        element_orders=[t["order"] for t in types],
        projective_element_orders=[t["projective_order"] for t in types],
        projective_order=doc["projective_order"],
        perfect=doc.get("perfect", True),
        linear=linear,
        declared=dict(doc.get("declared", {})),
    )
    known = ENTRIES.get(data.name)
    if known is not None:
        data.declared.setdefault("primitive", known.primitive)
    if sum(data.class_sizes) != data.order:
        raise CatalogValidationError(f"{data.name}: type sizes do not sum to the order")
    return data


def load_fixture(name: str) -> ClassData:
    return class_data_from_json(read_fixture_json(name))


# ---- derivation of the fixtures from the spin double cover ----------------


def _cycle_type(perm: tuple) -> tuple:
    seen, lengths = set(), []
    for s in range(len(perm)):
        if s in seen:
            continue
        k, x = 0, s
        while x not in seen:
            seen.add(x)
            x = perm[x]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def _perm_power(perm: tuple, k: int) -> tuple:
    out = tuple(range(len(perm)))
    for _ in range(k):
        out = tuple(perm[i] for i in out)
    return out


def _perm_sign(perm: tuple) -> int:
    return (-1) ** sum(c - 1 for c in _cycle_type(perm))


def _perm_from_type(lengths: tuple) -> tuple:
    p, start = [], 0
    for L in lengths:
        p.extend(range(start + 1, start + L))
        p.append(start)
        start += L
    return tuple(p)


def _partitions(n: int, top: int | None = None):
    top = n if top is None else top
    if n == 0:
        yield ()
        return
    for k in range(min(n, top), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _class_size(lengths: tuple, n: int) -> int:
    size = 1
    for L in lengths:
        size *= L
    counts: dict[int, int] = {}
    for L in lengths:
        counts[L] = counts.get(L, 0) + 1
    denom = 1
    for L, c in counts.items():
        denom *= L**c * _factorial(c)
    return _factorial(n) // denom


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _six_dim_angles(perm: tuple, alternating: bool) -> list[Fraction]:
    """Rotation angles (as fractions of a full turn) of the 6-dim orthogonal action.

    A6 acts by permutation matrices; A7 on the sum-zero hyperplane; S6 on the
    sum-zero hyperplane plus the sign character.
    """
    n = len(perm)
    eig: list[Fraction] = []
    for L in _cycle_type(perm):
        eig.extend(Fraction(j, L) for j in range(L))
    zero = Fraction(0)
    if n == 7:
        eig.remove(zero)
    elif not alternating:
        eig.remove(zero)
        eig.append(zero if _perm_sign(perm) == 1 else Fraction(1, 2))
    rest = sorted(eig)
    angles = []
    while rest:
        t = rest.pop(0)
        partner = (-t) % 1
        rest.remove(partner)
        angles.append(min(t, partner))
    if len(angles) != 3:
        raise CatalogValidationError("eigenvalues do not pair into three rotation planes")
    return angles


def _spin_value(half: list[Fraction]) -> tuple[CycNum, int]:
    """Half-spin character and element order of the spin lift with the given half-angles."""
    den = lcm(*(h.denominator for h in half))
    hs = [zeta(den, int(h * den)) for h in half]
    cos_part = CycNum.rational(1)
    sin_part = CycNum.rational(1)
    for h in hs:
        cos_part = cos_part * (h + h.inv())
        sin_part = sin_part * (h - h.inv())
    value = (cos_part + sin_part) * CycNum.rational(Fraction(1, 2))
    order = 1
    for signs in product((1, -1), repeat=3):
        if signs.count(-1) % 2:
            continue
        s = sum(e * h for e, h in zip(signs, half)) % 1
        order = lcm(order, s.denominator)
    return value, order


def spin_class_data(n: int, alternating: bool = True) -> dict:
    """Fixture document for the 4-dim spin representation of 2.A6, 2.S6 or 2.A7.

    Types are (permutation class, order of the lift, character value); the
    two lifts of a class fall into one type exactly when they have the same
    order and character value.
    """
    if (n, alternating) not in {(6, True), (6, False), (7, True)}:
        raise ValueError("spin fixtures exist for A6, S6 and A7")
    reps = []
    for lengths in _partitions(n):
        perm = _perm_from_type(lengths)
        if alternating and _perm_sign(perm) != 1:
            continue
        size = _class_size(lengths, n)
        split = alternating and len(set(lengths)) == len(lengths) and all(L % 2 for L in lengths) and size > 1
        if split:
            order = lcm(*lengths)
            other = next(k for k in range(2, order) if gcd(k, order) == 1 and not _alt_conjugate(perm, _perm_power(perm, k)))
            reps.append((perm, 1, size // 2))
            reps.append((perm, other, size // 2))
        else:
            reps.append((perm, 1, size))

    def lift(perm, k, flip):
        base = _six_dim_angles(perm, alternating)
        half = [a / 2 for a in base]
        half = [(h * k) % 1 for h in half]
        if flip:
            half[0] = (half[0] + Fraction(1, 2)) % 1
        return half

    def key_of(perm, half):
        value, order = _spin_value(half)
        return (_cycle_type(perm), order, value.minimal()), value, order

    types: dict = {}
    order_of_rep = {}
    for perm, k, size in reps:
        p = _perm_power(perm, k)
        for flip in (False, True):
            half = lift(perm, k, flip)
            key, value, order = key_of(p, half)
            rec = types.setdefault(key, {"size": 0, "value": value, "order": order, "perm": p, "half": half})
            rec["size"] += size
        order_of_rep[(perm, k)] = True

    def label(key):
        ct, order, value = key
        body = ",".join(str(c) for c in ct) if not all(c == 1 for c in ct) else ""
        if not body:
            return "e" if order == 1 else "z"
        return f"[{body}]_{order}"

    labels = {}
    for key in sorted(types, key=lambda kk: (-kk[1], kk[0], str(kk[2]))):
        lab = label(key)
        if lab in labels.values():
            j = 2
            while f"{lab}#{j}" in labels.values():
                j += 1
            lab = f"{lab}#{j}"
        labels[key] = lab

    m = 1
    for rec in types.values():
        m = lcm(m, rec["value"].minimal().order)
    max_order = max(rec["order"] for rec in types.values())
    docs = []
    for key in sorted(types, key=lambda kk: (-kk[1], kk[0], str(kk[2]))):
        rec = types[key]
        powers = {}
        for k in range(2, max_order):
            p = _perm_power(rec["perm"], k)
            half = [(h * k) % 1 for h in rec["half"]]
            pk, _, _ = key_of(p, half)
            powers[str(k)] = labels[pk]
        docs.append({
            "label": labels[key],
            "size": rec["size"],
            "chi": rec["value"].minimal().to_text(m),
            "order": rec["order"],
            "projective_order": lcm(*_cycle_type(rec["perm"])),
            "powers": powers,
        })
    name = {(6, True): "2A6", (6, False): "2S6", (7, True): "2A7"}[(n, alternating)]
    doc = {
        "name": f"{name}-fixture",
        "dimension": 4,
        "order": 2 * _factorial(n) // (2 if alternating else 1),
        "projective_order": _factorial(n) // (2 if alternating else 1),
        "root_order": m,
        "identity": "e",
        "perfect": alternating,
        "types": docs,
    }
    if not alternating:
        ordered = sorted(types, key=lambda kk: (-kk[1], kk[0], str(kk[2])))
        doc["linear"] = [["1"] * len(ordered), [str(_perm_sign(types[k]["perm"])) for k in ordered]]
    return doc


def _alt_conjugate(a: tuple, b: tuple) -> bool:
    """Are two permutations with equal cycle type conjugate by an even permutation?"""
    n = len(a)

    def cycles(p):
        seen, out = set(), []
        for s in range(n):
            if s in seen:
                continue
            c, x = [], s
            while x not in seen:
                seen.add(x)
                c.append(x)
                x = p[x]
            out.append(c)
        return sorted(out, key=len, reverse=True)

    ca, cb = cycles(a), cycles(b)
    conj = [0] * n
    for u, v in zip(ca, cb):
        for x, y in zip(u, v):
            conj[x] = y
    return _perm_sign(tuple(conj)) == 1


# ---------------------------------------------------------------------------
# identification


def _galois_key(x: CycNum) -> str:
    x = x.minimal()
    m = x.order
    return min(str(x.galois(k).minimal()) for k in range(1, max(m, 2)) if gcd(k, m) == 1)


def fingerprint(g: MatrixGroup, projective: bool = False) -> str:
    """Conjugation-stable summary used to recognise catalog groups.

    The exact form records (class size, element order, Galois orbit of the
    trace) per class.  The projective form records, per element of the
    projective image, (projective order, Galois orbit of |trace|^2); it does
    not change when generators are multiplied by roots of unity.
    """
    chi = natural_character(g)
    if not projective:
        rows = sorted((c.size, c.order, _galois_key(chi[i])) for i, c in enumerate(g.classes))
        payload = [g.dim, g.order, rows]
    else:
        counts: dict = {}
        for i, c in enumerate(g.classes):
            key = (g.projective_element_order(c.representative), _galois_key(chi[i] * chi[i].conj()))
            counts[key] = counts.get(key, 0) + c.size
        scalars = g.order // g.projective_order
        payload = [g.dim, g.projective_order, sorted((k[0], k[1], v // scalars) for k, v in counts.items())]
    return hashlib.sha256(json.dumps(payload).encode()).hexdigest()[:24]


def _stored_fingerprints() -> dict:
    try:
        text = resources.files("quotsing").joinpath("data", "fingerprints.json").read_text()
    except FileNotFoundError:
        return {}
    return json.loads(text)


def compute_fingerprints() -> dict:
    out = {}
    for name in matrix_names():
        if entry(name).same_as:
            continue
        g = build(name)
        out[name] = {"exact": fingerprint(g), "projective": fingerprint(g, projective=True)}
    return out


def identify(g) -> str | None:
    """Catalog name of a group (exact match first, then projective match), or None."""
    if isinstance(g, ClassData):
        return g.name if g.name in ENTRIES else None
    stored = _stored_fingerprints()
    if not stored:
        return None
    candidates = [n for n in stored if entry(n).dim == g.dim]
    if not candidates:
        return None
    exact = fingerprint(g)
    for n in candidates:
        if stored[n]["exact"] == exact and entry(n).order == g.order:
            return n
    proj = fingerprint(g, projective=True)
    for n in candidates:
        if stored[n]["projective"] == proj:
            return n
    return None
