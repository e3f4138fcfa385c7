import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from simplexinterp import (
    MultiIndex,
    enumerate_order,
    enumerate_upto,
    multinomial_weight,
    split_identity_check,
    submultiindices,
    unit_index,
    zero_index,
)

multiindices = st.lists(st.integers(0, 6), min_size=2, max_size=3).map(tuple)


def test_basic_accessors():
    g = MultiIndex((2, 0, 1))
    assert g.order == 3
    assert g.arity == 3
    assert g.factorial() == 2
    assert MultiIndex((0, 0)).factorial() == 1


def test_add_sub_componentwise():
    a = MultiIndex((2, 1))
    b = MultiIndex((0, 3))
    assert tuple(a + b) == (2, 4)
    assert tuple((a + b) - b) == (2, 1)
    with pytest.raises(ValueError):
        a - b  # would go negative
    with pytest.raises(ValueError):
        a + MultiIndex((1, 1, 1))  # arity mismatch


def test_dominated_by_and_dot():
    assert MultiIndex((1, 0)).dominated_by(MultiIndex((2, 1)))
    assert not MultiIndex((3, 0)).dominated_by(MultiIndex((2, 1)))
    assert MultiIndex((2, 1)).dot(MultiIndex((1, 1))) == 3


def test_unit_and_zero():
    assert tuple(zero_index(3)) == (0, 0, 0)
    assert tuple(unit_index(3, 1)) == (0, 1, 0)
    with pytest.raises(ValueError):
        unit_index(2, 2)


def test_enumerate_order_counts():
    # number of multi-indices of exact order m in d variables
    for d in (2, 3):
        for m in range(0, 7):
            exact = math.comb(m + d - 1, d - 1)
            assert len(enumerate_order(d, m)) == exact


def test_enumerate_upto_graded_lex_is_canonical():
    seq = enumerate_upto(2, 2)
    assert [tuple(g) for g in seq] == [
        (0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0),
    ]
    # grading: order never decreases
    orders = [g.order for g in enumerate_upto(3, 5)]
    assert orders == sorted(orders)


def test_enumerate_upto_size():
    for d in (2, 3):
        for m in range(0, 6):
            assert len(enumerate_upto(d, m)) == math.comb(m + d, d)


def test_multinomial_weight_values():
    assert multinomial_weight(2, (1, 1)) == 2
    assert multinomial_weight(2, (2, 0)) == 1
    assert multinomial_weight(3, (1, 1, 1)) == 6
    with pytest.raises(ValueError):
        multinomial_weight(2, (1, 0))  # order mismatch


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("m", [0, 1, 2, 3, 5])
def test_weights_sum_to_power(d, m):
    assert sum(multinomial_weight(m, g) for g in enumerate_order(d, m)) == d**m


def test_submultiindices_complete():
    dlt = MultiIndex((2, 1))
    subs = {tuple(e) for e in submultiindices(dlt)}
    assert subs == {(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)}


@given(multiindices)
def test_submultiindex_count(delta):
    dlt = MultiIndex(delta)
    assert len(submultiindices(dlt)) == math.prod(c + 1 for c in dlt)


@given(multiindices, multiindices)
def test_add_then_subtract_roundtrip(a, b):
    if len(a) != len(b):
        return
    ga, gb = MultiIndex(a), MultiIndex(b)
    assert (ga + gb) - gb == ga
    assert gb.dominated_by(ga + gb)


@pytest.mark.parametrize("delta", [(1, 0), (1, 1), (2, 1), (3, 2), (4, 5),
                                   (1, 1, 1), (3, 3, 3), (2, 0, 4)])
def test_split_identity_exact(delta):
    dlt = MultiIndex(delta)
    for m in range(0, dlt.order):
        assert split_identity_check(dlt, m)


def test_split_identity_rejects_bad_m():
    with pytest.raises(ValueError):
        split_identity_check((1, 1), 2)
    with pytest.raises(ValueError):
        split_identity_check((1, 1), -1)
