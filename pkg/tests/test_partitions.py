from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rcatalan import Partition, partitions
from rcatalan.partitions import parse_partition


@st.composite
def parts(draw, max_size=10):
    n = draw(st.integers(0, max_size))
    return draw(st.sampled_from(partitions(n)))


def test_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert Partition(()).size == 0


@given(parts())
def test_conjugate_is_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().size == lam.size


@given(parts())
def test_n_counts_legs(lam):
    assert lam.n() == sum(lam.leg(i, j) for i, j in lam.cells())
    assert lam.conjugate().n() == sum(lam.arm(i, j) for i, j in lam.cells())


def test_partition_counts_and_order():
    assert [len(partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    for n in range(1, 8):
        ps = partitions(n)
        assert ps == sorted(ps)
        # lex-increasing order is a linear extension of dominance
        for i, a in enumerate(ps):
            for b in ps[i + 1 :]:
                assert not a.dominates(b) or a == b


def test_class_sizes_sum_to_factorial():
    for n in range(1, 8):
        assert sum(factorial(n) // lam.z() for lam in partitions(n)) == factorial(n)


def test_parse_and_str():
    assert parse_partition("[2,1,1]") == Partition((2, 1, 1))
    assert parse_partition("3, 1") == Partition((3, 1))
    assert str(Partition((2, 1))) == "[2,1]"
