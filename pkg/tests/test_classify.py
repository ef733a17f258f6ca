import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quotsing import catalog
from quotsing.chars import Above
from quotsing.classify import (
    CITATIONS,
    Bound,
    check_bounds_consistent,
    classify,
    lct_upper_bounds,
    nagura_bound,
    smallest_prime_not_dividing,
    thomas_bound,
)
from quotsing.exactnum import zeta
from quotsing.matgroup import GMatrix, close

BUILDABLE = [n for n in catalog.NAMES if catalog.entry(n).model != "declared"]


@pytest.fixture(scope="module")
def verdicts():
    return {}


def verdict_of(name, cache):
    if name not in cache:
        cache[name] = classify(catalog.build(name))
    return cache[name]


@pytest.mark.parametrize("name", BUILDABLE)
def test_verdict_matches_catalog(name, verdicts):
    v = verdict_of(name, verdicts)
    e = catalog.entry(name)
    assert v.exceptional == e.exceptional
    assert v.weakly_exceptional == (e.weakly_exceptional or "undecided")
    assert check_bounds_consistent(v)
    assert set(v.citations) <= set(CITATIONS)
    assert all(b.citation in CITATIONS for b in v.lct_bounds)


@pytest.mark.parametrize("name", BUILDABLE)
def test_exceptional_groups_have_lower_bound_above_one(name, verdicts):
    v = verdict_of(name, verdicts)
    if v.exceptional == "yes":
        assert v.weakly_exceptional == "yes"
        assert any(b.value > 1 for b in v.lower_bounds())
    if v.exceptional == "no" and isinstance(v.min_semiinvariant_degree, int):
        assert any(b.value <= 1 for b in v.upper_bounds())


@pytest.mark.parametrize("name", BUILDABLE)
def test_verdict_serializes(name, verdicts):
    doc = verdict_of(name, verdicts).to_json()
    text = json.dumps(doc, sort_keys=True)
    assert json.loads(text) == doc
    for b in doc["lct_bounds"]:
        num, den = b["value"].split("/")
        assert int(den) > 0 and Fraction(int(num), int(den)) >= 0


def test_dimension_two_bounds_are_exact():
    v = classify(catalog.build("binary_icosahedral"))
    lower = max(b.value for b in v.lower_bounds())
    upper = min(b.value for b in v.upper_bounds())
    assert lower == upper == 6


def test_klein_group_bounds():
    v = classify(catalog.build("klein_168"))
    assert min(b.value for b in v.upper_bounds()) == Fraction(4, 3)
    assert max(b.value for b in v.lower_bounds()) == Fraction(4, 3)


def test_heisenberg_chain_is_monotone():
    chain = ["heisenberg5", "HM_index5", "HM"]
    groups = [catalog.build(n) for n in chain]
    assert groups[1].order % groups[0].order == 0 and groups[2].order % groups[1].order == 0
    ranks = {"no": 0, "undecided": 1, "yes": 2}
    results = [classify(g) for g in groups]
    assert [ranks[v.exceptional] for v in results] == sorted(ranks[v.exceptional] for v in results)
    degrees = [v.min_semiinvariant_degree for v in results]
    assert degrees[0] == 5 and all(isinstance(d, Above) for d in degrees[1:])


def test_group_generated_by_reflections_is_smooth():
    s3 = close([GMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]), GMatrix([[1, 0, 0], [0, 0, 1], [0, 1, 0]])])
    v = classify(s3)
    assert (v.exceptional, v.weakly_exceptional) == ("no", "no")
    assert "reflections.reduce" in v.citations


def test_group_with_some_reflections_is_undecided():
    g = close([GMatrix.diag([-1, 1]), GMatrix.scalar(2, zeta(4))])
    v = classify(g)
    assert v.reflections_present
    assert v.exceptional == "undecided"
    assert "reflections.undecided" in v.citations


def test_dimension_six_never_yes():
    ico = catalog.build("binary_icosahedral")
    g = close([catalog.sym_power_matrix(s, 5) for s in ico.generators])
    assert g.dim == 6 and g.order == 120
    v = classify(g)
    assert v.exceptional in ("no", "undecided")
    assert v.weakly_exceptional in ("no", "undecided")
    assert check_bounds_consistent(v)


def test_imprimitive_groups_are_not_exceptional():
    g = close([GMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]]), GMatrix.diag([zeta(7), zeta(7, 2), zeta(7, 4)])])
    v = classify(g)
    assert v.primitivity == "imprimitive"
    assert v.exceptional == "no"
    assert v.min_semiinvariant_degree == 3  # x y z
    assert "dim3.semi-invariants" in v.citations


def test_upper_bounds_use_the_smallest_missing_prime():
    g = catalog.build("klein_168")
    bounds = {b.citation: b.value for b in lct_upper_bounds(g, 4)}
    assert bounds["prime.lct-upper"] == smallest_prime_not_dividing(168) - 1 == 4
    assert bounds["semi-invariant.lct-upper"] == Fraction(4, 3)


@pytest.mark.parametrize("n,prime", [(1, 7), (2, 11), (10, 29), (100, 211)])
def test_thomas_examples(n, prime):
    assert thomas_bound(n) == (prime, prime - 1)


@given(st.integers(1, 10**5))
@settings(max_examples=300)
def test_thomas_prime_is_the_next_prime(n):
    p, bound = thomas_bound(n)
    assert p == sympy.nextprime(2 * n + 3)
    assert bound <= 4 * (n + 1)


@given(st.integers(23, 10**5))
@settings(max_examples=300)
def test_nagura_prime_lies_in_interval(n):
    p, bound = nagura_bound(n)
    assert sympy.isprime(p)
    assert 2 * n + 3 < p <= Fraction(6 * (2 * n + 4), 5)
    assert bound == p - 1 <= Fraction(12 * (n + 1), 5)


def test_nagura_examples():
    assert nagura_bound(23) == (53, 52)
    assert nagura_bound(24) == (53, 52)
    with pytest.raises(ValueError):
        nagura_bound(22)
    with pytest.raises(ValueError):
        thomas_bound(0)


@pytest.mark.parametrize("m,p", [(1, 2), (2, 3), (6, 5), (30, 7), (168, 5), (15000, 7)])
def test_smallest_prime_not_dividing(m, p):
    assert smallest_prime_not_dividing(m) == p


def test_bound_json_uses_fractions():
    b = Bound("upper", Fraction(5, 6), "twisted-cubic.lct-below-5/6", strict=True)
    assert b.to_json() == {"kind": "upper", "value": "5/6", "strict": True, "citation": "twisted-cubic.lct-below-5/6"}
    assert Bound("lower", Fraction(2), "dim2.lct-orbit").to_json()["value"] == "2/1"
