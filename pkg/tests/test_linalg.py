from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quotsing import linalg
from quotsing.exactnum import CycNum, zeta

ZERO, ONE = linalg.ZERO, linalg.ONE


@st.composite
def matrices(draw, n=3, orders=(1, 3, 4, 5)):
    m = draw(st.sampled_from(orders))
    z = zeta(m)
    entries = draw(st.lists(st.tuples(st.integers(-3, 3), st.integers(0, max(m - 1, 0))), min_size=n * n, max_size=n * n))
    vals = [CycNum.rational(a) * z**k for a, k in entries]
    return [vals[i * n : (i + 1) * n] for i in range(n)]


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_inverse_or_singular(a):
    if linalg.det(a).is_zero():
        assert linalg.rank(a) < 3
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(a)
    else:
        prod = linalg.matmul(a, linalg.inverse(a))
        assert all(prod[i][j] == (ONE if i == j else ZERO) for i in range(3) for j in range(3))


@given(matrices(), matrices())
@settings(max_examples=40, deadline=None)
def test_determinant_is_multiplicative(a, b):
    assert linalg.det(linalg.matmul(a, b)) == linalg.det(a) * linalg.det(b)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(a):
    kernel = linalg.nullspace(a)
    assert linalg.rank(a) + len(kernel) == 3
    for v in kernel:
        assert all(x.is_zero() for x in linalg.matvec(a, v))


def test_rational_example():
    a = [[1, 2], [3, 4]]
    assert linalg.det(a) == -2
    inv = linalg.inverse([[CycNum.rational(x) for x in row] for row in a])
    assert inv[0][0] == -2 and inv[1][0] == CycNum.rational(Fraction(3, 2))


def test_span_key_ignores_spanning_set():
    e1 = [ONE, ZERO, ZERO]
    e2 = [ZERO, ONE, ZERO]
    both = [e1[i] + e2[i] for i in range(3)]
    assert linalg.span_key([e1, e2]) == linalg.span_key([both, e2])
    assert linalg.span_key([e1]) != linalg.span_key([e2])


def test_intersection_of_planes():
    i = zeta(4)
    u = [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO]]
    w = [[ZERO, ONE, ZERO], [ZERO, ZERO, i]]
    meet = linalg.intersect(u, w, 3)
    assert linalg.span_key(meet) == linalg.span_key([[ZERO, ONE, ZERO]])
