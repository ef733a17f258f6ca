"""Exceptionality verdicts for quotient singularities C^(n+1)/G.

Every yes/no answer carries at least one citation id naming the rule that
produced it.  The ids are stable strings defined in ``CITATIONS``; reports
and tests refer to them by value.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import structure
from .chars import (
    Above,
    ClassData,
    invariant_dimension,
    min_semiinvariant_degree,
)
from .matgroup import MatrixGroup
from .primes import PrimeTable, next_prime

CITATIONS = {
    "criterion.semi-invariant": "a semi-invariant of degree d gives lct <= d/(n+1); exceptional needs lct > 1, weakly needs lct >= 1",
    "criterion.lift": "verdicts depend only on the projective image",
    "reflections.reduce": "a group generated by reflections has a smooth quotient",
    "reflections.undecided": "reflections present: reduce by the reflection subgroup first",
    "dim2.classification": "in SL(2) exceptional exactly when there is no semi-invariant of degree <= 2 (2.A4, 2.S4, 2.A5)",
    "dim2.weakly": "in dimension 2 lct equals half the smallest orbit length, so weakly exceptional iff transitive",
    "dim2.lct-orbit": "lct of the line equals half the minimal semi-invariant degree",
    "dim3.semi-invariants": "in dimension 3 exceptional iff no semi-invariant of degree <= 3",
    "dim3.weakly": "in dimension 3 weakly exceptional iff no semi-invariant of degree <= 2",
    "dim3.lct-4/3": "exceptional in dimension 3 implies lct >= 4/3",
    "dim4.classification": "in dimension 4 exceptional iff primitive with no semi-invariant of degree <= 4",
    "dim4.weakly": "in dimension 4 weakly exceptional iff transitive, no semi-invariant of degree <= 3 and no invariant twisted cubic",
    "dim4.weakly-order-61": "transitive, no semi-invariant of degree <= 3 and projective order >= 61 gives lct >= 1",
    "dim4.lct-5/4-order-169": "primitive, no semi-invariant of degree <= 4 and projective order >= 169 gives lct >= 5/4",
    "dim5.classification": "in dimension 5 exceptional iff primitive with no semi-invariant of degree <= 5",
    "dim5.lct-6/5": "exceptional in dimension 5 gives lct >= 6/5",
    "primitive.necessary": "exceptional quotients come from primitive groups",
    "transitive.necessary-for-weakly": "weakly exceptional quotients come from transitive groups",
    "exceptional-implies-weakly": "exceptional implies weakly exceptional",
    "semi-invariant.lct-upper": "lct <= d/(n+1) for a semi-invariant of degree d",
    "real.quadric": "an invariant quadric gives lct <= 2/(n+1)",
    "segre.lct-below-1": "an invariant Segre structure forces lct < 1",
    "twisted-cubic.lct-below-5/6": "an invariant twisted cubic forces lct < 5/6",
    "prime.lct-upper": "lct <= p - 1 for any prime p not dividing |G|",
    "thomas.lct-upper": "lct <= p' - 1 <= 4(n+1) with p' the least prime above 2n+3",
    "nagura.lct-upper": "for n >= 23, lct <= 12(n+1)/5",
    "dim5.weakly-open": "in dimension 5 weak exceptionality is settled only by necessary conditions or by exceptionality",
    "high-dim.no-yes": "outside dimensions 2 to 5 only necessary conditions are applied",
    "primitivity.uncertified": "primitivity could not be certified",
}


@dataclass(frozen=True)
class Bound:
    kind: str  # "upper" or "lower"
    value: Fraction
    citation: str
    strict: bool = False

    def to_json(self) -> dict:
        return {"kind": self.kind, "value": _rational_text(self.value), "strict": self.strict, "citation": self.citation}


@dataclass
class Verdict:
    dimension: int
    order: int
    projective_order: int
    reflections_present: bool
    transitive: bool
    primitivity: str
    primitivity_reason: str
    min_semiinvariant_degree: int | Above
    exceptional: str
    weakly_exceptional: str
    lct_bounds: list[Bound] = field(default_factory=list)
    citations: list[str] = field(default_factory=list)
    catalog_name: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def decided(self) -> bool:
        return "undecided" not in (self.exceptional, self.weakly_exceptional)

    def upper_bounds(self) -> list[Bound]:
        return [b for b in self.lct_bounds if b.kind == "upper"]

    def lower_bounds(self) -> list[Bound]:
        return [b for b in self.lct_bounds if b.kind == "lower"]

    def to_json(self) -> dict:
        d = self.min_semiinvariant_degree
        return {
            "dimension": self.dimension,
            "order": str(self.order),
            "projective_order": str(self.projective_order),
            "reflections_present": self.reflections_present,
            "transitive": self.transitive,
            "primitivity": {"state": self.primitivity, "reason": self.primitivity_reason},
            "min_semiinvariant_degree": str(d),
            "exceptional": self.exceptional,
            "weakly_exceptional": self.weakly_exceptional,
            "lct_bounds": [b.to_json() for b in self.lct_bounds],
            "citations": list(self.citations),
            "catalog_name": self.catalog_name,
            "notes": list(self.notes),
        }


def _rational_text(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# prime-based upper bounds


@lru_cache(maxsize=4)
def _table(limit: int) -> PrimeTable:
    return PrimeTable(limit)


def _prime_after(n: int) -> int:
    limit = 1 << 12
    while limit < 4 * n + 16:
        limit <<= 1
    p = _table(limit).next_above(n)
    return p if p is not None else next_prime(n)


def thomas_bound(n: int) -> tuple[int, int]:
    """(p', p' - 1) with p' the least prime in (2n+3, 2(2n+3)); checks p' <= 4n+5."""
    if n < 1:
        raise ValueError("n must be at least 1")
    lo = 2 * n + 3
    p = _prime_after(lo)
    if not lo < p < 2 * lo:
        raise ArithmeticError(f"no prime in ({lo}, {2 * lo})")
    if p > 4 * n + 5:
        raise ArithmeticError(f"prime {p} exceeds 4n+5 = {4 * n + 5}")
    return p, p - 1


def nagura_bound(n: int) -> tuple[int, Fraction]:
    """(p, bound) with p a prime in (2n+3, 6(2n+4)/5]; the bound p - 1 is at most 12(n+1)/5."""
    if n < 23:
        raise ValueError("the Nagura interval is used for n >= 23 only")
    lo = 2 * n + 3
    hi = Fraction(6 * (2 * n + 4), 5)
    p = _prime_after(lo)
    if p > hi:
        raise ArithmeticError(f"no prime in ({lo}, {hi}]")
    bound = Fraction(p - 1)
    if bound > Fraction(12 * (n + 1), 5):
        raise ArithmeticError("prime bound exceeds 12(n+1)/5")
    return p, bound


def smallest_prime_not_dividing(m: int) -> int:
    p = 2
    while m % p == 0:
        p = next_prime(p)
    return p


# ---------------------------------------------------------------------------
# bounds


def _segre(name: str | None) -> bool:
    if name is None:
        return False
    from .catalog import ENTRIES

    e = ENTRIES.get(name)
    return bool(e and e.segre)


def _twisted_cubic(g) -> bool:
    if g.dim != 4:
        return False
    try:
        return structure.invariant_twisted_cubic_exists(g)
    except ValueError:
        return False


def lct_upper_bounds(g, min_degree: int | Above | None = None, catalog_name: str | None = None) -> list[Bound]:
    """All applicable upper bounds for lct(P^n, G-bar)."""
    n1 = g.dim
    if min_degree is None:
        min_degree = min_semiinvariant_degree(g, n1 + 1)
    out = []
    if isinstance(min_degree, int):
        out.append(Bound("upper", Fraction(min_degree, n1), "semi-invariant.lct-upper"))
    if invariant_dimension(g, 2) > 0:
        out.append(Bound("upper", Fraction(2, n1), "real.quadric"))
    if _twisted_cubic(g):
        out.append(Bound("upper", Fraction(5, 6), "twisted-cubic.lct-below-5/6", strict=True))
    if _segre(catalog_name):
        out.append(Bound("upper", Fraction(1), "segre.lct-below-1", strict=True))
    p = smallest_prime_not_dividing(g.order)
    out.append(Bound("upper", Fraction(p - 1), "prime.lct-upper"))
    n = n1 - 1
    if n >= 1:
        out.append(Bound("upper", Fraction(thomas_bound(n)[1]), "thomas.lct-upper"))
    if n >= 23:
        out.append(Bound("upper", nagura_bound(n)[1], "nagura.lct-upper"))
    return out


def lct_lower_certificates(
    g,
    min_degree: int | Above | None = None,
    primitive: bool | None = None,
    transitive: bool | None = None,
) -> list[Bound]:
    """Lower bounds whose hypotheses are verified on this group."""
    n1 = g.dim
    if min_degree is None:
        min_degree = min_semiinvariant_degree(g, n1 + 1)
    if transitive is None:
        transitive = structure.is_transitive(g)
    if primitive is None and n1 in (4, 5):
        primitive = structure.primitivity_verdict(g).is_primitive

    def above(k: int) -> bool:
        return isinstance(min_degree, Above) and min_degree.bound >= k or isinstance(min_degree, int) and min_degree > k

    out = []
    if n1 == 2:
        if isinstance(min_degree, int):
            out.append(Bound("lower", Fraction(min_degree, 2), "dim2.lct-orbit"))
        else:
            out.append(Bound("lower", Fraction(min_degree.bound + 1, 2), "dim2.lct-orbit"))
    if n1 == 3:
        if above(3):
            out.append(Bound("lower", Fraction(4, 3), "dim3.lct-4/3"))
        elif above(2):
            out.append(Bound("lower", Fraction(1), "dim3.weakly"))
    if n1 == 4:
        if primitive and above(4) and g.projective_order >= 169:
            out.append(Bound("lower", Fraction(5, 4), "dim4.lct-5/4-order-169"))
        elif transitive and above(3) and g.projective_order >= 61:
            out.append(Bound("lower", Fraction(1), "dim4.weakly-order-61"))
    if n1 == 5 and primitive and above(5):
        out.append(Bound("lower", Fraction(6, 5), "dim5.lct-6/5"))
    return out


# ---------------------------------------------------------------------------
# the decision procedure

# The binary polyhedral groups have minimal semi-invariant degrees 4, 6 and 12,
# so this search recovers the exact threshold for all of them.
DIM2_SEARCH = 12


def _has_reflections(g) -> bool:
    if isinstance(g, ClassData):
        return bool(g.declared.get("reflections", False))
    return g.has_reflections


def _generated_by_reflections(g: MatrixGroup) -> bool:
    mask = g.reflection_mask()
    return int(g.generated_mask(list(map(int, mask.nonzero()[0]))).sum()) == g.order


def _identify(g) -> str | None:
    from .catalog import identify

    return identify(g)


def classify(g, max_degree: int | None = None, catalog_name: str | None = None) -> Verdict:
    """Verdict for the quotient of C^dim by the group g (a MatrixGroup or fixture)."""
    n1 = g.dim
    max_degree = max(DIM2_SEARCH if n1 == 2 else n1 + 1, max_degree or 0)
    if catalog_name is None:
        catalog_name = g.name if isinstance(g, ClassData) else _identify(g)
    refl = _has_reflections(g)
    transitive = structure.is_transitive(g)
    min_degree = min_semiinvariant_degree(g, max_degree)

    v = Verdict(
        dimension=n1,
        order=g.order,
        projective_order=g.projective_order,
        reflections_present=refl,
        transitive=transitive,
        primitivity="primitive-uncertified",
        primitivity_reason="",
        min_semiinvariant_degree=min_degree,
        exceptional="undecided",
        weakly_exceptional="undecided",
        catalog_name=catalog_name,
    )

    if refl:
        if isinstance(g, MatrixGroup) and _generated_by_reflections(g):
            v.exceptional = v.weakly_exceptional = "no"
            v.citations.append("reflections.reduce")
            v.notes.append("the group is generated by reflections, so the quotient is smooth")
        else:
            v.citations.append("reflections.undecided")
            v.notes.append("reflections present: classify G modulo its reflection subgroup")
        v.primitivity_reason = "not examined"
        return v

    declared_primitive = None
    if catalog_name is not None:
        from .catalog import ENTRIES

        if catalog_name in ENTRIES:
            declared_primitive = ENTRIES[catalog_name].primitive
    prim = structure.primitivity_verdict(g, catalog_name=catalog_name, declared_primitive=declared_primitive)
    v.primitivity, v.primitivity_reason = prim.state, prim.reason
    primitive = prim.is_primitive

    def small(k: int) -> bool:
        return isinstance(min_degree, int) and min_degree <= k

    def decide_exceptional(rule: str):
        if not transitive or primitive is False:
            return "no", "primitive.necessary"
        if small(n1):
            return "no", "criterion.semi-invariant"
        if rule == "high":
            return "undecided", "high-dim.no-yes"
        if primitive is None:
            return "undecided", "primitivity.uncertified"
        return "yes", rule

    def decide_weakly_general():
        if not transitive:
            return "no", "transitive.necessary-for-weakly"
        if small(n1 - 1):
            return "no", "criterion.semi-invariant"
        return None

    if n1 == 2:
        v.exceptional = "no" if small(2) else "yes"
        v.citations.append("dim2.classification")
        v.weakly_exceptional = "yes" if transitive else "no"
        v.citations.append("dim2.weakly")
    elif n1 == 3:
        v.exceptional = "no" if small(3) else "yes"
        v.citations.append("dim3.semi-invariants")
        v.weakly_exceptional = "no" if small(2) else "yes"
        v.citations.append("dim3.weakly")
    elif n1 == 4:
        v.exceptional, cite = decide_exceptional("dim4.classification")
        v.citations.append(cite)
        w = decide_weakly_general()
        if w is None:
            if _twisted_cubic(g):
                w = ("no", "twisted-cubic.lct-below-5/6")
            elif _segre(catalog_name):
                w = ("no", "segre.lct-below-1")
            else:
                w = ("yes", "dim4.weakly")
        v.weakly_exceptional = w[0]
        v.citations.append(w[1])
    elif n1 == 5:
        v.exceptional, cite = decide_exceptional("dim5.classification")
        v.citations.append(cite)
        w = decide_weakly_general()
        if w is None:
            w = ("undecided", "dim5.weakly-open")
        v.weakly_exceptional = w[0]
        v.citations.append(w[1])
    else:
        v.exceptional, cite = decide_exceptional("high")
        v.citations.append(cite)
        w = decide_weakly_general() or ("undecided", "high-dim.no-yes")
        v.weakly_exceptional = w[0]
        v.citations.append(w[1])

    if v.exceptional == "yes" and v.weakly_exceptional != "yes":
        v.weakly_exceptional = "yes"
        v.citations = [c for c in v.citations if c != "dim5.weakly-open"]
        v.citations.append("exceptional-implies-weakly")

    v.lct_bounds = lct_upper_bounds(g, min_degree, catalog_name) + lct_lower_certificates(
        g, min_degree, primitive=primitive, transitive=transitive
    )
    v.citations = list(dict.fromkeys(v.citations))
    return v


def check_bounds_consistent(v: Verdict) -> bool:
    """No certified lower bound exceeds an upper bound (strict uppers must stay strictly above)."""
    for lo in v.lower_bounds():
        for up in v.upper_bounds():
            if lo.value > up.value or (up.strict and lo.value >= up.value):
                return False
    return True
