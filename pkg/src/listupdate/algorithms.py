"""Online list update algorithms.

Every algorithm serves one request at a time through ``serve`` and only
uses free exchanges. Decisions never look at accumulated cost.
"""
from __future__ import annotations

import random
from typing import Iterable, Mapping

from .core import (
    FULL,
    CostLedger,
    CostModel,
    ListState,
    ListUpdateError,
    RequestSequence,
    free_move,
)


class OnlineAlgorithm:
    name = "abstract"

    def __init__(self, initial_order: Iterable[int]):
        self.list = ListState(initial_order)

    def serve(self, item: int, model: CostModel = FULL) -> int:
        cost = model.charge(self.list.position(item))
        self._reorganize(item)
        return cost

    def _reorganize(self, item: int) -> None:
        raise NotImplementedError

    @property
    def order(self) -> tuple[int, ...]:
        return self.list.order


class MoveToFront(OnlineAlgorithm):
    name = "mtf"

    def _reorganize(self, item):
        free_move(self.list, item, 1)


class MoveToFrontEveryOther(OnlineAlgorithm):
    """Keeps a bit per item; each access flips it, and the item moves to
    the front when the bit becomes 0.

    All bits 1 gives MTF-Odd (moves on the 1st, 3rd, ... access), all bits 0
    gives MTF-Even.
    """

    name = "mtf2"

    def __init__(self, initial_order, bits: Mapping[int, int]):
        super().__init__(initial_order)
        self.bits = {item: int(bits[item]) & 1 for item in self.list}

    def _reorganize(self, item):
        self.bits[item] ^= 1
        if self.bits[item] == 0:
            free_move(self.list, item, 1)


class MTFOdd(MoveToFrontEveryOther):
    name = "mtfo"

    def __init__(self, initial_order):
        order = list(initial_order)
        super().__init__(order, {item: 1 for item in order})


class MTFEven(MoveToFrontEveryOther):
    name = "mtfe"

    def __init__(self, initial_order):
        order = list(initial_order)
        super().__init__(order, {item: 0 for item in order})


class BIT(MoveToFrontEveryOther):
    """MTF2 with bits drawn from a seeded generator, one per item id."""

    name = "bit"

    def __init__(self, initial_order, seed: int):
        order = list(initial_order)
        super().__init__(order, seeded_bits(order, seed))
        self.seed = seed


def seeded_bits(items: Iterable[int], seed: int) -> dict[int, int]:
    # bit of item i is the i-th draw, so projections see the same bits
    items = list(items)
    rng = random.Random(seed)
    draws = [rng.getrandbits(1) for _ in range(max(items, default=-1) + 1)]
    return {item: draws[item] for item in items}


class Timestamp(OnlineAlgorithm):
    """TS: insert x in front of the first item that precedes it and was
    accessed at most once since the previous access to x."""

    name = "ts"

    def __init__(self, initial_order):
        super().__init__(initial_order)
        self.history: dict[int, tuple[int, ...]] = {}
        self.clock = 0

    def _reorganize(self, item):
        t = self.clock
        self.clock += 1
        prev = self.history.get(item)
        if prev is not None:
            last = prev[-1]
            pos = self.list.position(item)
            for p in range(1, pos):
                y = self.list.item_at(p)
                since = sum(1 for s in self.history.get(y, ()) if s > last)
                if since <= 1:
                    free_move(self.list, item, p)
                    break
        self.history[item] = ((prev or ()) + (t,))[-2:]


PROJECTIVE = ("mtf", "ts", "mtfo", "mtfe")


def make_algorithm(alg_id: str, initial_order: Iterable[int]) -> OnlineAlgorithm:
    """Build an algorithm from its CLI identifier.

    Identifiers: mtf, ts, mtfo, mtfe, mtf2:<bitstring>, bit:<seed>. The
    bitstring of mtf2 is indexed by item id.
    """
    order = list(initial_order)
    kind, _, arg = alg_id.partition(":")
    if kind == "mtf" and not arg:
        return MoveToFront(order)
    if kind == "ts" and not arg:
        return Timestamp(order)
    if kind == "mtfo" and not arg:
        return MTFOdd(order)
    if kind == "mtfe" and not arg:
        return MTFEven(order)
    if kind == "mtf2":
        if not arg or set(arg) - {"0", "1"}:
            raise ListUpdateError(f"mtf2 needs a bitstring, got {arg!r}")
        if order and max(order) >= len(arg):
            raise ListUpdateError(f"mtf2 bitstring {arg!r} too short for item {max(order)}")
        return MoveToFrontEveryOther(order, {item: int(arg[item]) for item in order})
    if kind == "bit":
        try:
            seed = int(arg)
        except ValueError:
            raise ListUpdateError(f"bit needs an integer seed, got {arg!r}") from None
        return BIT(order, seed)
    raise ListUpdateError(f"unknown algorithm {alg_id!r}")


def simulate(alg: "OnlineAlgorithm | str", seq: RequestSequence, model: CostModel = FULL) -> CostLedger:
    if isinstance(alg, str):
        alg = make_algorithm(alg, seq.initial_order)
    ledger = CostLedger()
    for item in seq.requests:
        ledger.charge(alg.serve(item, model))
    return ledger


def cost(alg_id: str, seq: RequestSequence, model: CostModel = FULL) -> int:
    return simulate(alg_id, seq, model).total
