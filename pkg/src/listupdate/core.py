"""List model, cost models and exchange primitives.

Positions are 1-based everywhere: the front item sits at position 1 and
costs 1 to access under the full model, 0 under the partial model.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class ListUpdateError(ValueError):
    """Malformed request, list or move."""


class CapacityError(RuntimeError):
    """An exact computation was asked for on a list that is too long."""


class CostModel(enum.Enum):
    FULL = "full"
    PARTIAL = "partial"

    @classmethod
    def parse(cls, value: "str | CostModel") -> "CostModel":
        if isinstance(value, CostModel):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ListUpdateError(f"unknown cost model {value!r}") from None

    def charge(self, position: int) -> int:
        return position if self is CostModel.FULL else position - 1


FULL = CostModel.FULL
PARTIAL = CostModel.PARTIAL


class ListState:
    """A permutation of item ids with O(1) position lookup."""

    __slots__ = ("_order", "_pos")

    def __init__(self, order: Iterable[int]):
        self._order = list(order)
        self._pos = {item: i for i, item in enumerate(self._order)}
        if len(self._pos) != len(self._order):
            raise ListUpdateError(f"duplicate items in list {self._order}")

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(self._order)

    def __len__(self) -> int:
        return len(self._order)

    def __iter__(self):
        return iter(self._order)

    def __contains__(self, item) -> bool:
        return item in self._pos

    def __eq__(self, other) -> bool:
        if isinstance(other, ListState):
            return self._order == other._order
        return NotImplemented

    def __repr__(self) -> str:
        return f"ListState({self._order})"

    def copy(self) -> "ListState":
        return ListState(self._order)

    def position(self, item: int) -> int:
        try:
            return self._pos[item] + 1
        except KeyError:
            raise ListUpdateError(f"item {item!r} is not in the list") from None

    def item_at(self, position: int) -> int:
        return self._order[position - 1]

    def precedes(self, a: int, b: int) -> bool:
        return self.position(a) < self.position(b)

    def _move(self, item: int, target_pos: int) -> None:
        src = self._pos[item]
        dst = target_pos - 1
        del self._order[src]
        self._order.insert(dst, item)
        lo, hi = min(src, dst), max(src, dst)
        for i in range(lo, hi + 1):
            self._pos[self._order[i]] = i

    def _set(self, order: Sequence[int]) -> None:
        self._order = list(order)
        self._pos = {item: i for i, item in enumerate(self._order)}


def access(lst: ListState, item: int, model: CostModel = FULL) -> int:
    """Cost of accessing ``item``; the list is left untouched."""
    return model.charge(lst.position(item))


def free_move(lst: ListState, item: int, target_pos: int) -> ListState:
    """Move the just-accessed ``item`` forward to ``target_pos`` at no cost."""
    current = lst.position(item)
    if target_pos < 1 or target_pos > current:
        raise ListUpdateError(
            f"free exchange can only move {item!r} toward the front "
            f"(from {current} to {target_pos})"
        )
    lst._move(item, target_pos)
    return lst


def move_to_front(lst: ListState, item: int) -> ListState:
    return free_move(lst, item, 1)


def kendall_tau(a: Sequence[int], b: Sequence[int]) -> int:
    """Number of item pairs whose relative order differs between a and b."""
    if len(a) != len(b) or set(a) != set(b):
        raise ListUpdateError(f"{list(a)} and {list(b)} are not permutations of one set")
    rank = {item: i for i, item in enumerate(b)}
    seq = [rank[item] for item in a]
    inv = 0
    for i in range(len(seq)):
        si = seq[i]
        for j in range(i + 1, len(seq)):
            if si > seq[j]:
                inv += 1
    return inv


def paid_rearrange(lst: ListState, target: "ListState | Sequence[int]") -> int:
    """Rearrange ``lst`` into ``target`` with paid exchanges; returns their count."""
    target_order = target.order if isinstance(target, ListState) else tuple(target)
    cost = kendall_tau(lst.order, target_order)
    lst._set(target_order)
    return cost


def adjacent_swaps(src: Sequence[int], dst: Sequence[int]) -> list[int]:
    """A shortest list of adjacent transpositions turning src into dst.

    Each entry p means "swap positions p and p+1" (1-based). Bubble sort on
    target ranks, so the length equals the Kendall-tau distance.
    """
    rank = {item: i for i, item in enumerate(dst)}
    work = [rank[item] for item in src]
    swaps = []
    for end in range(len(work) - 1, 0, -1):
        for p in range(end):
            if work[p] > work[p + 1]:
                work[p], work[p + 1] = work[p + 1], work[p]
                swaps.append(p + 1)
    return swaps


@dataclass
class CostLedger:
    access: int = 0
    paid_exchanges: int = 0
    steps: list[int] = field(default_factory=list, repr=False, compare=False)

    @property
    def total(self) -> int:
        return self.access + self.paid_exchanges

    def charge(self, access_cost: int, exchanges: int = 0) -> None:
        self.access += access_cost
        self.paid_exchanges += exchanges
        self.steps.append(access_cost + exchanges)

    def __add__(self, other: "CostLedger") -> "CostLedger":
        return CostLedger(
            self.access + other.access,
            self.paid_exchanges + other.paid_exchanges,
            self.steps + other.steps,
        )


@dataclass(frozen=True)
class RequestSequence:
    """Requests over a static list, together with the initial order."""

    initial_order: tuple[int, ...]
    requests: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "initial_order", tuple(self.initial_order))
        object.__setattr__(self, "requests", tuple(self.requests))
        items = set(self.initial_order)
        if len(items) != len(self.initial_order):
            raise ListUpdateError(f"duplicate items in initial order {self.initial_order}")
        for r in self.requests:
            if r not in items:
                raise ListUpdateError(f"request {r!r} is not in the initial list")

    @property
    def n(self) -> int:
        return len(self.requests)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.initial_order)

    def __len__(self) -> int:
        return len(self.requests)

    def initial_list(self) -> ListState:
        return ListState(self.initial_order)

    def __add__(self, other: "RequestSequence") -> "RequestSequence":
        # the result keeps this sequence's initial order
        if set(other.initial_order) != set(self.initial_order):
            raise ListUpdateError("cannot concatenate sequences over different lists")
        return RequestSequence(self.initial_order, self.requests + other.requests)
