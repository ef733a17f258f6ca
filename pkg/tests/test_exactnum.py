from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quotsing.exactnum import (
    CycNum,
    PackedField,
    ParseError,
    cyclotomic_poly,
    parse_cyc,
    sqrt_of_int,
    totient,
    zeta,
)

ORDERS = [1, 3, 4, 5, 7, 8, 9, 12, 15, 20, 24]


@st.composite
def cycnums(draw, orders=ORDERS):
    m = draw(st.sampled_from(orders))
    coeffs = draw(st.lists(st.integers(-6, 6), min_size=totient(m), max_size=totient(m)))
    den = draw(st.integers(1, 5))
    return CycNum(m, coeffs, den)


def test_sum_of_nontrivial_fifth_roots():
    z = zeta(5)
    assert z + z**2 + z**3 + z**4 == -1
    assert (z + z**2 + z**3 + z**4).to_fraction() == -1


def test_i_squared():
    assert zeta(4) * zeta(4) == -1


def test_inverse_of_root():
    assert zeta(5).inv() == zeta(5, 4)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        CycNum.rational(0).inv()


def test_conj_examples():
    assert zeta(4).conj() == -zeta(4)
    q = CycNum.rational(Fraction(7, 3))
    assert q.conj() == q
    assert q.to_fraction() == Fraction(7, 3)
    assert zeta(5).to_fraction() is None


@pytest.mark.parametrize("m, expected", [(1, (-1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)), (12, (1, 0, -1, 0, 1))])
def test_cyclotomic_polynomials(m, expected):
    assert cyclotomic_poly(m) == expected


def test_orders_two_mod_four_are_rewritten():
    assert zeta(6) == -zeta(3, 2)
    assert zeta(10, 3).order == 5
    assert zeta(2) == -1


@pytest.mark.parametrize("n", [2, 3, 5, -1, -3, 12, -7, 10])
def test_square_roots(n):
    assert sqrt_of_int(n) ** 2 == n


@given(cycnums(), cycnums(), cycnums())
@settings(max_examples=60, deadline=None)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    if not a.is_zero():
        assert a * a.inv() == 1


@given(cycnums(), st.sampled_from([2, 3, 5]))
@settings(max_examples=40, deadline=None)
def test_promotion_round_trip(a, k):
    big = a.promote(a.order * k if (a.order * k) % 4 != 2 else a.order * k * 2)
    assert big == a
    assert big.minimal() == a.minimal()
    assert big.minimal().order == a.minimal().order
    assert hash(big) == hash(a)


@given(cycnums(), cycnums())
@settings(max_examples=40, deadline=None)
def test_conj_is_involutive_homomorphism(a, b):
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()


@given(cycnums())
@settings(max_examples=40, deadline=None)
def test_text_round_trip(a):
    assert parse_cyc(a.to_text(), a.order) == a


def test_parse_grammar():
    assert parse_cyc(" 1/2 * z ^ 3 - z + 2 ", 8) == Fraction(1, 2) * zeta(8, 3) - zeta(8) + 2
    assert parse_cyc("-z^2", 10) == -zeta(10, 2)
    assert parse_cyc("3", 7) == 3


@pytest.mark.parametrize("bad", ["", "1+", "z^", "2/0", "1**z", "x"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_cyc(bad, 5)


def test_packed_field_matches_scalar_product():
    f = PackedField(12)
    a, b = zeta(12) + 3, zeta(12, 5) - zeta(4)
    pa, _ = f.pack(a)
    pb, _ = f.pack(b)
    assert f.unpack(f.mul(pa, pb)) == a * b
