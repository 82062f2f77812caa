"""Experiment runner, projections, the potential audit and phase tables."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .advice import AdviceTape, best3_follower, best3_tape, subset_follower
from .algorithms import PROJECTIVE, MTFEven, MTFOdd, make_algorithm, simulate
from .core import (
    FULL,
    PARTIAL,
    CostLedger,
    CostModel,
    ListState,
    ListUpdateError,
    RequestSequence,
    adjacent_swaps,
)
from .offline import (
    DpSolution,
    max_list_length,
    opt_dp,
    opt_subset_transfer_dp,
    pair_opt,
    partition_phases,
    repeat_lookahead,
)

CSV_FIELDS = ("family", "params", "algorithm", "model", "n", "l", "access", "exchanges", "total", "opt", "ratio")


class UnsupportedAlgorithm(ListUpdateError):
    pass


@dataclass
class RunReport:
    algorithm: str
    model: CostModel
    ledger: CostLedger
    n: int
    l: int
    opt_cost: Optional[int] = None
    opt_kind: str = "none"  # dp | subset | pair | strategy | bound | none
    family: str = ""
    params: str = ""

    @property
    def ratio(self) -> Optional[Fraction]:
        if self.opt_cost is None or self.opt_cost == 0:
            return None
        return Fraction(self.ledger.total, self.opt_cost)

    @property
    def ratio_is_lower_bound(self) -> bool:
        # an upper bound on OPT only gives a lower bound on the true ratio
        return self.opt_kind in ("strategy", "bound")

    def row(self) -> dict:
        r = self.ratio
        return {
            "family": self.family,
            "params": self.params,
            "algorithm": self.algorithm,
            "model": self.model.value,
            "n": self.n,
            "l": self.l,
            "access": self.ledger.access,
            "exchanges": self.ledger.paid_exchanges,
            "total": self.ledger.total,
            "opt": "" if self.opt_cost is None else self.opt_cost,
            "ratio": "" if r is None else f"{float(r):.6f}",
        }


def serve(alg: str, seq: RequestSequence, model: CostModel = FULL, tape: Optional[AdviceTape] = None) -> CostLedger:
    """Run any algorithm id, including the advice followers best3 and subset."""
    model = CostModel.parse(model)
    if alg == "best3":
        return best3_follower(tape if tape is not None else best3_tape(seq, model), seq, model)
    if alg == "subset":
        if tape is None:
            raise ListUpdateError("the subset follower needs an advice tape")
        return subset_follower(tape, seq, model)
    return simulate(make_algorithm(alg, seq.initial_order), seq, model)


def offline_cost(seq: RequestSequence, model: CostModel, mode: str) -> tuple[Optional[int], str]:
    if mode == "auto":
        mode = "dp" if seq.l <= max_list_length() else "strategy"
    if mode == "dp":
        return opt_dp(seq, model).total_cost, "dp"
    if mode == "subset":
        return opt_subset_transfer_dp(seq, model).total_cost, "subset"
    if mode == "pair":
        return pair_opt(seq, model), "pair"
    if mode == "strategy":
        return repeat_lookahead(seq, model).total, "strategy"
    if mode == "none":
        return None, "none"
    raise ListUpdateError(f"unknown opt mode {mode!r}")


def run(
    alg: str,
    seq: RequestSequence,
    model: "CostModel | str" = FULL,
    opt: str = "auto",
    opt_bound: Optional[int] = None,
    tape: Optional[AdviceTape] = None,
    family: str = "",
    params: str = "",
) -> RunReport:
    """Simulate ``alg`` and attach an offline reference cost.

    ``opt="auto"`` uses the exact DP when the list is small enough and the
    repeat-lookahead schedule otherwise; ``opt_bound`` overrides both with
    a caller-declared upper bound on OPT.
    """
    model = CostModel.parse(model)
    ledger = serve(alg, seq, model, tape)
    if opt_bound is not None:
        opt_cost, kind = opt_bound, "bound"
    else:
        opt_cost, kind = offline_cost(seq, model, opt)
    return RunReport(alg, model, ledger, seq.n, seq.l, opt_cost, kind, family, params)


def project(seq: RequestSequence, pair: tuple[int, int]) -> RequestSequence:
    """Requests to the two items only, with their initial relative order."""
    a, b = pair
    if a == b:
        raise ListUpdateError("projection needs two distinct items")
    for item in pair:
        if item not in seq.initial_order:
            raise ListUpdateError(f"item {item!r} is not in the list")
    keep = {a, b}
    order = tuple(i for i in seq.initial_order if i in keep)
    return RequestSequence(order, [r for r in seq.requests if r in keep])


def _check_projective(alg: str) -> None:
    if alg in PROJECTIVE or alg.startswith(("mtf2:", "bit:")):
        return
    raise UnsupportedAlgorithm(f"{alg!r} is not in the projective set {PROJECTIVE}")


def factoring_check(alg: str, seq: RequestSequence) -> bool:
    """Partial cost on the whole list equals the sum over all item pairs."""
    _check_projective(alg)
    whole = simulate(alg, seq, PARTIAL).total
    parts = sum(
        simulate(alg, project(seq, pair), PARTIAL).total
        for pair in itertools.combinations(seq.initial_order, 2)
    )
    return whole == parts


# -- potential audit -------------------------------------------------------


def potential(alg_list: ListState, bits: dict, opt_list: ListState) -> int:
    """Weighted inversions of one follower against OPT's list.

    (a, b) is an inversion when a precedes b for the follower but not for
    OPT; it weighs 1 if the follower's bit for b is 1, else 2.
    """
    order = alg_list.order
    phi = 0
    for i, a in enumerate(order):
        pa = opt_list.position(a)
        for b in order[i + 1:]:
            if opt_list.position(b) < pa:
                phi += 1 if bits[b] == 1 else 2
    return phi


@dataclass(frozen=True)
class AuditEvent:
    kind: str  # "offline" (one OPT paid exchange) or "online" (one request)
    request: int
    online_cost: int
    opt_cost: int
    phi_before: int
    phi_after: int

    @property
    def amortized(self) -> int:
        return self.online_cost + self.phi_after - self.phi_before

    @property
    def ok(self) -> bool:
        return self.amortized <= 4 * self.opt_cost


@dataclass
class PotentialAudit:
    events: list[AuditEvent] = field(default_factory=list)
    mtfo_total: int = 0
    mtfe_total: int = 0
    opt_total: int = 0

    @property
    def violations(self) -> list[AuditEvent]:
        return [e for e in self.events if not e.ok]

    @property
    def phi0(self) -> int:
        return self.events[0].phi_before if self.events else 0

    @property
    def phi_last(self) -> int:
        return self.events[-1].phi_after if self.events else 0


def potential_audit(seq: RequestSequence, solution: DpSolution) -> PotentialAudit:
    """Replay MTF-Odd, MTF-Even and an OPT schedule side by side under the
    full model and record the amortized cost of every event."""
    if solution.model is not FULL:
        raise ListUpdateError("the potential audit uses the full cost model")
    if len(solution.trace) != seq.n:
        raise ListUpdateError("OPT trace does not match the sequence")
    odd, even = MTFOdd(seq.initial_order), MTFEven(seq.initial_order)
    opt = seq.initial_list()

    def phi():
        return potential(odd.list, odd.bits, opt) + potential(even.list, even.bits, opt)

    audit = PotentialAudit()
    current = phi()
    for t, (item, step) in enumerate(zip(seq.requests, solution.trace)):
        for p in adjacent_swaps(opt.order, step.target):
            order = list(opt.order)
            order[p - 1], order[p] = order[p], order[p - 1]
            opt = ListState(order)
            after = phi()
            audit.events.append(AuditEvent("offline", t, 0, 1, current, after))
            audit.opt_total += 1
            current = after
        if opt.order != step.target:
            raise ListUpdateError(f"OPT trace step {t} is inconsistent")
        opt_access = opt.position(item)
        c_odd = odd.serve(item, FULL)
        c_even = even.serve(item, FULL)
        after = phi()
        audit.events.append(AuditEvent("online", t, c_odd + c_even, opt_access, current, after))
        audit.mtfo_total += c_odd
        audit.mtfe_total += c_even
        audit.opt_total += opt_access
        current = after
    return audit


# -- per-phase cost tables ------------------------------------------------


@dataclass(frozen=True)
class PhaseRow:
    label: str
    form: str
    type: int
    j: int
    k: int
    mtfo: int
    mtfe: int
    ts: int
    opt: int

    @property
    def mtf2(self) -> int:
        return max(self.mtfo, self.mtfe)

    @property
    def best3_sum(self) -> int:
        return self.mtfo + self.mtfe + self.ts

    @property
    def sum_ratio(self) -> Optional[Fraction]:
        return Fraction(self.best3_sum, self.opt) if self.opt else None

    @property
    def mtf2_ratio(self) -> Optional[Fraction]:
        return Fraction(self.mtf2, self.opt) if self.opt else None


def phase_label(form: str, j: int, k: int) -> str:
    head = f"x^{j}" if j else ""
    if form == "a":
        return head + "yy"
    body = f"(yx)^{k}" if k > 1 else "yx"
    return head + body + ("yy" if form == "b" else "x")


def phase_cost_table(seq: RequestSequence) -> list[PhaseRow]:
    """Partial-model costs of MTF-Odd, MTF-Even, TS and the two-item
    optimum, split at phase boundaries, plus a residual and a total row."""
    decomposition = partition_phases(seq)
    if seq.n == 0:
        return []
    steps = {
        name: simulate(name, seq, PARTIAL).steps for name in ("mtfo", "mtfe", "ts")
    }
    steps["opt"] = repeat_lookahead(seq, PARTIAL).steps

    def span(start, stop):
        return {k: sum(v[start:stop]) for k, v in steps.items()}

    rows = []
    for p in decomposition.phases:
        c = span(p.start, p.stop)
        rows.append(PhaseRow(phase_label(p.form, p.j, p.k), p.form, p.type, p.j, p.k,
                             c["mtfo"], c["mtfe"], c["ts"], c["opt"]))
    if decomposition.residual:
        c = span(decomposition.residual_start, seq.n)
        rows.append(PhaseRow("residual", "-", 0, 0, 0, c["mtfo"], c["mtfe"], c["ts"], c["opt"]))
    c = span(0, seq.n)
    rows.append(PhaseRow("total", "*", 0, 0, 0, c["mtfo"], c["mtfe"], c["ts"], c["opt"]))
    return rows


def ratio_text(r: Optional[Fraction]) -> str:
    return "" if r is None else f"{r.numerator}/{r.denominator} ({float(r):.6f})"


def best3_min_ratio(seq: RequestSequence, model: CostModel, opt_cost: int) -> Fraction:
    costs = [simulate(a, seq, model).total for a in ("ts", "mtfo", "mtfe")]
    return Fraction(min(costs), opt_cost)


def all_sequences(items: Sequence[int], max_n: int, min_n: int = 0):
    for n in range(min_n, max_n + 1):
        yield from itertools.product(items, repeat=n)
