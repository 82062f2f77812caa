import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from listupdate.core import (
    FULL,
    PARTIAL,
    CostLedger,
    CostModel,
    ListState,
    ListUpdateError,
    RequestSequence,
    access,
    adjacent_swaps,
    free_move,
    kendall_tau,
    paid_rearrange,
)
from listupdate.algorithms import simulate

from conftest import bfs_swap_distance, inversions

x, y, z = 0, 1, 2
a, b, c = 0, 1, 2


def test_access_costs():
    assert access(ListState([x, y]), y, FULL) == 2
    assert access(ListState([x, y]), x, PARTIAL) == 0
    assert access(ListState([a, b, c]), c, FULL) == 3


def test_access_unknown_item():
    with pytest.raises(ListUpdateError):
        access(ListState([x, y]), 7)


def test_access_leaves_list_alone():
    lst = ListState([a, b, c])
    access(lst, c)
    assert lst.order == (a, b, c)


def test_free_move():
    assert free_move(ListState([x, y, z]), z, 1).order == (z, x, y)
    assert free_move(ListState([x, y, z]), z, 3).order == (x, y, z)
    with pytest.raises(ListUpdateError):
        free_move(ListState([x, y, z]), x, 2)


def test_paid_rearrange_examples():
    lst = ListState([x, y])
    assert paid_rearrange(lst, [y, x]) == 1
    assert lst.order == (y, x)
    assert paid_rearrange(ListState([a, b, c]), [c, b, a]) == inversions((a, b, c), (c, b, a)) == 3
    assert paid_rearrange(ListState([a, b, c]), [a, b, c]) == 0


def test_paid_rearrange_item_mismatch():
    with pytest.raises(ListUpdateError):
        paid_rearrange(ListState([a, b, c]), [a, b, 5])


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_kendall_tau_is_shortest_swap_count(l):
    items = tuple(range(l))
    for src in itertools.permutations(items):
        for dst in itertools.permutations(items):
            d = kendall_tau(src, dst)
            assert d == bfs_swap_distance(src, dst)
            assert len(adjacent_swaps(src, dst)) == d


@given(st.permutations(range(5)), st.permutations(range(5)))
def test_adjacent_swaps_reach_target(src, dst):
    work = list(src)
    for p in adjacent_swaps(src, dst):
        work[p - 1], work[p] = work[p], work[p - 1]
    assert work == list(dst)


@given(st.permutations(range(6)), st.lists(st.tuples(st.integers(0, 5), st.integers(1, 6)), max_size=30))
def test_list_stays_a_permutation(order, moves):
    lst = ListState(order)
    for item, target in moves:
        pos = lst.position(item)
        if target <= pos:
            free_move(lst, item, target)
        assert sorted(lst.order) == list(range(6))
        assert [lst.position(i) for i in lst.order] == list(range(1, 7))


@given(st.lists(st.integers(0, 3), max_size=40))
def test_partial_is_full_minus_n(reqs):
    s = RequestSequence(range(4), reqs)
    for alg in ("mtf", "ts", "mtfo", "mtfe"):
        assert simulate(alg, s, PARTIAL).total == simulate(alg, s, FULL).total - len(reqs)


def test_cost_model_parse():
    assert CostModel.parse("Partial") is PARTIAL
    with pytest.raises(ListUpdateError):
        CostModel.parse("weird")


def test_ledger_is_additive():
    one = CostLedger()
    one.charge(3, 1)
    two = CostLedger()
    two.charge(2)
    both = one + two
    assert (both.access, both.paid_exchanges, both.total) == (5, 1, 6)


def test_request_sequence_validation():
    with pytest.raises(ListUpdateError):
        RequestSequence((0, 1), (0, 2))
    with pytest.raises(ListUpdateError):
        RequestSequence((0, 0), ())
    s = RequestSequence((0, 1), (1, 0)) + RequestSequence((1, 0), (1,))
    assert s.initial_order == (0, 1) and s.requests == (1, 0, 1)
