"""Exact offline optima and two-item machinery.

``opt_dp`` and ``opt_subset_transfer_dp`` share one dynamic program over
the l! list orders: before each request the list may be rearranged (the
allowed moves differ), then the request is served. Transition matrices
are cached per item set.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .core import (
    FULL,
    CapacityError,
    CostLedger,
    CostModel,
    ListState,
    ListUpdateError,
    RequestSequence,
    access,
    free_move,
    paid_rearrange,
)

DEFAULT_MAX_L = 6
_INF = np.int64(1) << 40


def max_list_length() -> int:
    raw = os.environ.get("LUP_MAX_L")
    return int(raw) if raw else DEFAULT_MAX_L


def _check_capacity(l: int) -> None:
    limit = max_list_length()
    if l > limit:
        raise CapacityError(f"exact offline optimum needs l <= {limit}, got l = {l}")


@dataclass(frozen=True)
class DpStep:
    target: tuple[int, ...]  # list order right before the access
    access: int
    exchange: int
    subset_bits: Optional[str] = None


@dataclass
class DpSolution:
    total_cost: int
    model: CostModel
    trace: list[DpStep] = field(default_factory=list)

    @property
    def access_cost(self) -> int:
        return sum(s.access for s in self.trace)

    @property
    def exchange_cost(self) -> int:
        return sum(s.exchange for s in self.trace)

    def advice_bits(self) -> str:
        return "".join(s.subset_bits or "" for s in self.trace)

    def replay(self, seq: RequestSequence) -> CostLedger:
        """Re-run the schedule through the core primitives."""
        if len(self.trace) != seq.n:
            raise ListUpdateError("trace length does not match the sequence")
        lst = seq.initial_list()
        ledger = CostLedger()
        for item, step in zip(seq.requests, self.trace):
            exch = paid_rearrange(lst, step.target)
            ledger.charge(access(lst, item, self.model), exch)
        return ledger


class _Space:
    """All orders of one item set, in lexicographic order."""

    def __init__(self, items: tuple[int, ...]):
        self.items = items
        self.perms = list(itertools.permutations(items))
        self.index = {p: i for i, p in enumerate(self.perms)}
        l = len(items)
        col = {item: c for c, item in enumerate(items)}
        pos = np.empty((len(self.perms), l), dtype=np.int64)
        for r, p in enumerate(self.perms):
            for i, item in enumerate(p):
                pos[r, col[item]] = i
        self.pos = pos  # 0-based position of each item (column per item)
        self.col = col
        self._kt = None
        self._subset = {}

    @property
    def kendall(self) -> np.ndarray:
        if self._kt is None:
            P = len(self.perms)
            kt = np.zeros((P, P), dtype=np.int64)
            for a, b in itertools.combinations(range(len(self.items)), 2):
                before = self.pos[:, a] < self.pos[:, b]
                kt += before[:, None] != before[None, :]
            self._kt = kt
        return self._kt

    def access_vector(self, item: int, model: CostModel) -> np.ndarray:
        return self.pos[:, self.col[item]] + (1 if model is FULL else 0)

    def subset_matrix(self, item: int) -> np.ndarray:
        """Exchange cost of every subset transfer for a request to item."""
        if item not in self._subset:
            P = len(self.perms)
            m = np.full((P, P), _INF, dtype=np.int64)
            kt = self.kendall
            for r, perm in enumerate(self.perms):
                i = perm.index(item)
                for bits in itertools.product("01", repeat=i):
                    c = self.index[subset_transfer(perm, item, "".join(bits))]
                    m[r, c] = kt[r, c]
            self._subset[item] = m
        return self._subset[item]


@lru_cache(maxsize=16)
def _space(items: tuple[int, ...]) -> _Space:
    return _Space(items)


def subset_transfer(order, item: int, bits: str) -> tuple[int, ...]:
    """Apply one subset transfer: items in front of ``item`` flagged by
    ``bits`` (front to back) are moved to just behind it, keeping order."""
    order = tuple(order)
    i = order.index(item)
    if len(bits) != i:
        raise ListUpdateError(f"need {i} bits for a request at position {i + 1}, got {len(bits)}")
    moved = [order[b] for b in range(i) if bits[b] == "1"]
    kept = [order[b] for b in range(i) if bits[b] == "0"]
    return tuple(kept) + (item,) + tuple(moved) + order[i + 1:]


def _subset_bits(prev: tuple[int, ...], nxt: tuple[int, ...], item: int) -> str:
    i = prev.index(item)
    behind = set(nxt[nxt.index(item) + 1:])
    return "".join("1" if prev[b] in behind else "0" for b in range(i))


def dp_start(initial_order) -> tuple[_Space, np.ndarray]:
    """State space and cost vector before the first request."""
    initial_order = tuple(initial_order)
    space = _space(tuple(sorted(initial_order)))
    cost = np.full(len(space.perms), _INF, dtype=np.int64)
    cost[space.index[initial_order]] = 0
    return space, cost


def dp_step(space: _Space, cost: np.ndarray, item: int, model: CostModel, subset: bool):
    """One request: cheapest way into every order, then the access.

    Returns the new cost vector and, per order, the predecessor used.
    """
    move = space.subset_matrix(item) if subset else space.kendall
    total = cost[:, None] + move
    arg = total.argmin(axis=0)  # first minimum = lexicographically smallest source
    new = total[arg, np.arange(len(space.perms))] + space.access_vector(item, model)
    return np.minimum(new, _INF), arg


def _solve(seq: RequestSequence, model: CostModel, subset: bool) -> DpSolution:
    model = CostModel.parse(model)
    _check_capacity(seq.l)
    if seq.n == 0:
        return DpSolution(0, model, [])
    space, cost = dp_start(seq.initial_order)
    back = []
    for item in seq.requests:
        cost, arg = dp_step(space, cost, item, model, subset)
        back.append(arg)
    end = int(cost.argmin())
    best = int(cost[end])
    states = [end]
    for arg in reversed(back[1:]):
        states.append(int(arg[states[-1]]))
    states.reverse()
    trace = []
    prev = seq.initial_order
    for item, s in zip(seq.requests, states):
        target = space.perms[s]
        exch = int(space.kendall[space.index[prev], s])
        bits = _subset_bits(prev, target, item) if subset else None
        trace.append(DpStep(target, model.charge(target.index(item) + 1), exch, bits))
        prev = target
    return DpSolution(best, model, trace)


def opt_dp(seq: RequestSequence, model: CostModel = FULL) -> DpSolution:
    """Optimal offline cost with arbitrary paid exchanges before each request."""
    return _solve(seq, model, subset=False)


def opt_subset_transfer_dp(seq: RequestSequence, model: CostModel = FULL) -> DpSolution:
    """Optimal offline cost when the only move before a request is a subset
    transfer; each step records its subset as a bit per preceding position."""
    return _solve(seq, model, subset=True)


def repeat_lookahead(seq: RequestSequence, model: CostModel = FULL) -> CostLedger:
    """Offline rule: free-move the accessed item to the front iff the next
    request is to the same item.

    Optimal for two items; on the long lower-bound families it is the
    schedule their analysis charges to the optimum.
    """
    model = CostModel.parse(model)
    lst = seq.initial_list()
    ledger = CostLedger()
    reqs = seq.requests
    for t, item in enumerate(reqs):
        ledger.charge(access(lst, item, model))
        if t + 1 < len(reqs) and reqs[t + 1] == item:
            free_move(lst, item, 1)
    return ledger


def pair_opt(seq: RequestSequence, model: CostModel = FULL) -> int:
    if seq.l != 2:
        raise ListUpdateError(f"pair_opt works on two items, got {seq.l}")
    return repeat_lookahead(seq, model).total


@dataclass(frozen=True)
class Phase:
    type: int  # 1: first initial item in front at phase start, 2: the other
    form: str  # "a", "b" or "c"
    j: int
    k: int  # 0 for form a
    start: int
    stop: int

    @property
    def critical(self) -> bool:
        return self.form == "c" and self.k == 1


@dataclass
class PhaseDecomposition:
    sequence: RequestSequence
    phases: list[Phase]
    residual_start: int

    @property
    def residual(self) -> tuple[int, ...]:
        return self.sequence.requests[self.residual_start:]

    def pieces(self) -> list[tuple[int, ...]]:
        reqs = self.sequence.requests
        return [reqs[p.start:p.stop] for p in self.phases]


def partition_phases(seq: RequestSequence) -> PhaseDecomposition:
    """Greedy left-to-right parse into phases x^j yy, x^j (yx)^k yy and
    x^j (yx)^k x, where x is the item in front at the phase start."""
    if seq.l != 2:
        raise ListUpdateError(f"phases are defined on two items, got {seq.l}")
    first = seq.initial_order[0]
    front, back = seq.initial_order
    reqs = seq.requests
    n = len(reqs)
    phases = []
    start = 0
    while start < n:
        phase = _next_phase(reqs, start, front, back, 1 if front == first else 2)
        if phase is None:
            break
        phases.append(phase)
        if phase.form != "c":
            front, back = back, front
        start = phase.stop
    return PhaseDecomposition(seq, phases, start)


def _next_phase(reqs, start, front, back, ptype) -> Optional[Phase]:
    n = len(reqs)
    i = start
    while i < n and reqs[i] == front:
        i += 1
    j = i - start
    # reqs[i] is the first request to the back item
    if i + 1 >= n:
        return None
    if reqs[i + 1] == back:
        return Phase(ptype, "a", j, 0, start, i + 2)
    k = 1
    i += 2  # past one (back, front) pair
    while i < n:
        if reqs[i] == front:
            return Phase(ptype, "c", j, k, start, i + 1)
        if i + 1 >= n:
            return None
        if reqs[i + 1] == back:
            return Phase(ptype, "b", j, k, start, i + 2)
        k += 1
        i += 2
    return None
