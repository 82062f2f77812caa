import itertools
import random

import numpy as np
import pytest

from listupdate.algorithms import simulate
from listupdate.core import FULL, PARTIAL, CapacityError, ListUpdateError, RequestSequence, kendall_tau
from listupdate.generators import gen_alpha, gen_bitstring, gen_random
from listupdate.offline import (
    dp_start,
    dp_step,
    opt_dp,
    opt_subset_transfer_dp,
    pair_opt,
    partition_phases,
    subset_transfer,
)

from conftest import seq

x, y = 0, 1


def brute_force_opt(s, model):
    """Try every choice of list order before every request."""
    perms = list(itertools.permutations(s.initial_order))
    best = None
    for plan in itertools.product(perms, repeat=s.n):
        cost, cur = 0, s.initial_order
        for item, target in zip(s.requests, plan):
            cost += kendall_tau(cur, target) + model.charge(target.index(item) + 1)
            cur = target
        best = cost if best is None else min(best, cost)
    return best or 0


def free_exchange_opt(s, model):
    """Paid exchanges before each request plus a free move of the accessed
    item afterwards."""
    perms = list(itertools.permutations(s.initial_order))
    costs = {s.initial_order: 0}
    for item in s.requests:
        served = {}
        for cur, c in costs.items():
            for target in perms:
                v = c + kendall_tau(cur, target) + model.charge(target.index(item) + 1)
                i = target.index(item)
                for dst in range(i + 1):
                    moved = list(target)
                    del moved[i]
                    moved.insert(dst, item)
                    moved = tuple(moved)
                    if v < served.get(moved, 1 << 30):
                        served[moved] = v
        costs = served
    return min(costs.values())


def test_bitstring_round_costs():
    assert opt_dp(seq((x, y), (y, y, y, x, x)), FULL).total_cost == 7
    assert opt_dp(seq((x, y), (y, x, x, x, x)), FULL).total_cost == 6


def test_empty_sequence():
    assert opt_dp(seq((x, y), ()), FULL).total_cost == 0
    assert opt_subset_transfer_dp(seq((0, 1, 2), ()), FULL).total_cost == 0


@pytest.mark.parametrize("k", [0, 1, 3, 10])
def test_alpha_partial_opt(k):
    assert opt_dp(gen_alpha(k), PARTIAL).total_cost == 2 * k


def test_matches_brute_force():
    rng = random.Random(1)
    for l, n in [(2, 5), (3, 4)]:
        for _ in range(40):
            s = gen_random(l, n, rng.randrange(10**6))
            for model in (FULL, PARTIAL):
                assert opt_dp(s, model).total_cost == brute_force_opt(s, model)


@pytest.mark.parametrize("l", [2, 3])
def test_free_exchanges_do_not_help(l):
    rng = random.Random(l)
    for _ in range(60):
        s = gen_random(l, rng.randrange(1, 8), rng.randrange(10**6))
        assert opt_dp(s, FULL).total_cost == free_exchange_opt(s, FULL)


def test_trace_replays():
    for seed in range(50):
        s = gen_random(4, 12, seed)
        for solve in (opt_dp, opt_subset_transfer_dp):
            for model in (FULL, PARTIAL):
                sol = solve(s, model)
                led = sol.replay(s)
                assert led.total == sol.total_cost
                assert sol.access_cost + sol.exchange_cost == sol.total_cost


def test_trace_is_reproducible():
    s = gen_random(4, 12, 3)
    assert opt_dp(s).trace == opt_dp(s).trace
    assert opt_subset_transfer_dp(s).advice_bits() == opt_subset_transfer_dp(s).advice_bits()


def test_partial_is_full_minus_n():
    for seed in range(30):
        s = gen_random(4, 10, seed)
        assert opt_dp(s, PARTIAL).total_cost == opt_dp(s, FULL).total_cost - s.n


def test_opt_below_online():
    for seed in range(100):
        s = gen_random(4, 12, seed)
        o = opt_dp(s, FULL).total_cost
        for alg in ("mtf", "ts", "mtfo", "mtfe", "bit:1"):
            assert o <= simulate(alg, s, FULL).total


def test_capacity_guard(monkeypatch):
    with pytest.raises(CapacityError):
        opt_dp(gen_random(7, 3, 0))
    monkeypatch.setenv("LUP_MAX_L", "2")
    with pytest.raises(CapacityError):
        opt_subset_transfer_dp(gen_random(3, 3, 0))


def test_subset_round_and_front_request():
    assert opt_subset_transfer_dp(seq((x, y), (y, y, y, x, x))).total_cost == 7
    sol = opt_subset_transfer_dp(seq((0, 1, 2), (0,)))
    assert sol.trace[0].subset_bits == "" and sol.trace[0].exchange == 0


def test_subset_transfer_move():
    assert subset_transfer((0, 1, 2, 3), 2, "10") == (1, 2, 0, 3)
    assert subset_transfer((0, 1, 2, 3), 2, "11") == (2, 0, 1, 3)
    with pytest.raises(ListUpdateError):
        subset_transfer((0, 1, 2), 2, "1")


@pytest.mark.parametrize("l", [2, 3, 4])
def test_subset_transfer_optimal_exhaustive(l):
    """Every sequence with n <= 10: walk the prefix tree carrying both DPs."""
    items = tuple(range(l))
    space, start = dp_start(items)
    stack = [(start, start, 0)]
    checked = 0
    while stack:
        full, sub, depth = stack.pop()
        assert full.min() == sub.min()
        checked += 1
        if depth == 10:
            continue
        for item in items:
            stack.append((dp_step(space, full, item, FULL, False)[0],
                          dp_step(space, sub, item, FULL, True)[0], depth + 1))
    assert checked == sum(l ** n for n in range(11))


def test_subset_transfer_optimal_random_l5():
    for seed in range(1000):
        s = gen_random(5, 14, seed)
        assert opt_subset_transfer_dp(s).total_cost == opt_dp(s).total_cost


def test_pair_opt_phases():
    for k in range(1, 6):
        for j in range(3):
            assert pair_opt(seq((x, y), [x] * j + [y, x] * k + [y, y]), PARTIAL) == k + 1
            assert pair_opt(seq((x, y), [x] * j + [y, x] * k + [x]), PARTIAL) == k


def test_pair_opt_is_optimal_exhaustive():
    for n in range(13):
        for reqs in itertools.product((x, y), repeat=n):
            s = seq((x, y), reqs)
            assert pair_opt(s, PARTIAL) == opt_dp(s, PARTIAL).total_cost


def test_pair_opt_needs_two_items():
    with pytest.raises(ListUpdateError):
        pair_opt(gen_random(3, 4, 0))


def test_phase_examples():
    d = partition_phases(seq((x, y), (x, y, y)))
    assert [(p.type, p.form, p.j) for p in d.phases] == [(1, "a", 1)] and d.residual == ()
    d = partition_phases(seq((x, y), (y, x, x)))
    assert [(p.type, p.form, p.j, p.k) for p in d.phases] == [(1, "c", 0, 1)]
    d = partition_phases(seq((x, y), (y, x, y, y, x, x)))
    assert [(p.type, p.form, p.j, p.k) for p in d.phases] == [(1, "b", 0, 1), (2, "a", 0, 0)]


def test_phase_residual():
    d = partition_phases(seq((x, y), (y, x, y, y, x, x, y, x)))
    assert len(d.phases) == 2 and d.residual == (y, x)


def test_phases_round_trip_and_shape():
    for n in range(13):
        for reqs in itertools.product((x, y), repeat=n):
            s = seq((x, y), reqs)
            d = partition_phases(s)
            assert sum(d.pieces(), ()) + d.residual == reqs
            for piece, p in zip(d.pieces(), d.phases):
                if p.form in "ab":
                    assert piece[-1] == piece[-2]
            # the list order at each phase start matches the phase type,
            # for every algorithm with two consecutive requests at phase ends
            for alg_id in ("ts", "mtfo", "mtfe"):
                steps = []
                from listupdate.algorithms import make_algorithm
                alg = make_algorithm(alg_id, (x, y))
                orders = []
                for r in reqs:
                    orders.append(alg.order)
                    alg.serve(r)
                for p in d.phases:
                    expected = (x, y) if p.type == 1 else (y, x)
                    assert orders[p.start] == expected, (alg_id, reqs, p)


def test_phases_need_two_items():
    with pytest.raises(ListUpdateError):
        partition_phases(gen_random(3, 5, 0))
