from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from quotsing.exactnum import CycNum, zeta
from quotsing.matgroup import GMatrix, GroupTooLarge, close, is_reflection, root_of_unity_exponent, sl_lift

I4 = zeta(4)


@pytest.fixture(scope="module")
def q8():
    return close([GMatrix.diag([I4, -I4]), GMatrix([[0, 1], [-1, 0]])])


@pytest.fixture(scope="module")
def s3():
    return close([GMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]), GMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])])


def test_quaternion_group(q8):
    assert q8.order == 8
    assert sorted(c.size for c in q8.classes) == [1, 1, 2, 2, 2]
    assert q8.abelianization.invariant_factors == (2, 2)
    assert int(q8.center_mask.sum()) == 2
    assert int(q8.scalar_mask.sum()) == 2
    assert q8.projective_order == 4
    assert q8.exponent == 4
    assert not q8.has_reflections


def test_symmetric_group_as_permutation_matrices(s3):
    assert s3.order == 6
    assert s3.abelianization.invariant_factors == (2,)
    assert int(s3.commutator_mask.sum()) == 3
    assert int(s3.reflection_mask().sum()) == 3
    assert s3.has_reflections
    sizes = sorted(int(m.sum()) for m in s3.normal_subgroup_masks)
    assert sizes == [1, 3, 6]


def test_multiplication_tables_agree_with_matrices(q8):
    elems = q8.elements
    for x in range(q8.order):
        for y in range(q8.order):
            assert elems[q8.mul(x, y)] == elems[x] @ elems[y]
        assert elems[int(q8.inverse_index[x])] == elems[x].inverse()


def test_element_lookup(q8):
    assert q8.index_of(GMatrix.identity(2)) == 0
    assert GMatrix.scalar(2, -1) in q8
    assert GMatrix.scalar(2, I4) not in q8
    assert GMatrix.identity(3) not in q8


def test_subgroup_records_ambient_indices(s3):
    sub = s3.subgroup([3])
    assert sub.order == 2
    assert [s3.element(int(i)) for i in sub.ambient_index] == sub.elements


def test_class_equation_and_power_maps(q8):
    assert sum(q8.class_sizes) == q8.order
    sq = q8.power_map(2)
    minus_one = q8.class_of[q8.index_of(GMatrix.scalar(2, -1))]
    for c in q8.classes:
        expected = q8.class_of[q8.mul(c.representative, c.representative)]
        assert sq[q8.class_of[c.representative]] == expected
        if c.order == 4:
            assert expected == minus_one


def test_infinite_group_hits_the_limit():
    with pytest.raises(GroupTooLarge):
        close([GMatrix([[1, 1], [0, 1]])], limit=1000)


def test_singular_generator_is_rejected():
    with pytest.raises(ValueError):
        close([GMatrix([[1, 0], [0, 0]])])


def test_mixed_dimensions_are_rejected():
    with pytest.raises(ValueError):
        close([GMatrix.identity(2), GMatrix.identity(3)])


def test_reflections():
    assert is_reflection(GMatrix.diag([-1, 1, 1]))
    assert is_reflection(GMatrix.diag([I4, 1]))
    assert not is_reflection(GMatrix.diag([-1, -1, 1]))
    assert not is_reflection(GMatrix.identity(2))


@given(st.integers(1, 40), st.integers(0, 80))
def test_root_of_unity_exponent(m, k):
    order, j = root_of_unity_exponent(zeta(m, k))
    assert zeta(order, j) == zeta(m, k)
    expected = m // gcd(m, k) if k % m else 1
    assert order == expected


@given(st.integers(2, 4), st.sampled_from([3, 4, 5, 8]), st.integers(1, 7))
@settings(max_examples=40, deadline=None)
def test_sl_lift_has_determinant_one(n, m, k):
    g = GMatrix.diag([zeta(m, k)] + [1] * (n - 1))
    (lifted,) = sl_lift([g])
    assert lifted.det() == 1
    ratio = lifted.entries[1][1]
    assert lifted == g.scale(ratio)


def test_cyclic_group_order_from_root():
    g = close([GMatrix.diag([zeta(7), zeta(7, 6)])])
    assert g.order == 7
    assert g.abelianization.invariant_factors == (7,)
    assert len(g.classes) == 7
    assert g.trace(1) == zeta(7) + zeta(7, 6)
    assert g.trace(0) == CycNum.rational(2)
