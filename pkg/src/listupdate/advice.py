"""Advice tapes, the oracles that write them and the algorithms that read them."""
from __future__ import annotations

import enum
import math
import struct
from typing import Iterable

from .algorithms import MTFEven, MTFOdd, Timestamp, simulate
from .core import (
    FULL,
    CostLedger,
    CostModel,
    ListUpdateError,
    RequestSequence,
    access,
    paid_rearrange,
)
from .offline import opt_subset_transfer_dp, subset_transfer


class InvalidAdvice(ListUpdateError):
    pass


class AdviceTape:
    """Bits read strictly in order; ``consumed`` is the advice complexity."""

    def __init__(self, bits: "str | Iterable[int]" = ""):
        if isinstance(bits, str):
            if set(bits) - {"0", "1"}:
                raise InvalidAdvice(f"tape may only hold 0/1, got {bits!r}")
            self.bits = [int(b) for b in bits]
        else:
            self.bits = [int(b) & 1 for b in bits]
        self.cursor = 0

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __repr__(self) -> str:
        return f"AdviceTape({str(self)!r}, cursor={self.cursor})"

    @property
    def consumed(self) -> int:
        return self.cursor

    def write(self, bits: "str | Iterable[int]") -> None:
        self.bits.extend(int(b) for b in bits)

    def read(self, count: int = 1) -> str:
        if self.cursor + count > len(self.bits):
            raise InvalidAdvice(
                f"advice tape exhausted: wanted {count} bits at {self.cursor}, tape has {len(self.bits)}"
            )
        out = self.bits[self.cursor:self.cursor + count]
        self.cursor += count
        return "".join(map(str, out))

    def rewind(self) -> None:
        self.cursor = 0

    def to_ascii(self) -> str:
        return str(self)

    @classmethod
    def from_ascii(cls, text: str) -> "AdviceTape":
        return cls(text.strip())

    def to_packed(self) -> bytes:
        # 4-byte big-endian bit count, then bits MSB first, zero padded
        out = bytearray(struct.pack(">I", len(self.bits)))
        for i in range(0, len(self.bits), 8):
            chunk = self.bits[i:i + 8]
            byte = 0
            for b in chunk:
                byte = byte << 1 | b
            out.append(byte << (8 - len(chunk)))
        return bytes(out)

    @classmethod
    def from_packed(cls, data: bytes) -> "AdviceTape":
        if len(data) < 4:
            raise InvalidAdvice("packed tape shorter than its length prefix")
        (count,) = struct.unpack(">I", data[:4])
        body = data[4:]
        if len(body) * 8 < count:
            raise InvalidAdvice(f"packed tape holds {len(body) * 8} bits, header says {count}")
        bits = [(body[i // 8] >> (7 - i % 8)) & 1 for i in range(count)]
        return cls(bits)


class Selector(enum.IntEnum):
    TS = 0b00
    MTFO = 0b01
    MTFE = 0b10

    @property
    def code(self) -> str:
        return format(int(self), "02b")

    @property
    def alg_id(self) -> str:
        return self.name.lower()

    @classmethod
    def decode(cls, code: str) -> "Selector":
        try:
            return cls(int(code, 2))
        except ValueError:
            raise InvalidAdvice(f"invalid algorithm selector {code!r}") from None


_BEST3 = {Selector.TS: Timestamp, Selector.MTFO: MTFOdd, Selector.MTFE: MTFEven}


def best3_costs(seq: RequestSequence, model: CostModel = FULL) -> dict[Selector, int]:
    return {sel: simulate(cls(seq.initial_order), seq, model).total for sel, cls in _BEST3.items()}


def best3_oracle(seq: RequestSequence, model: CostModel = FULL) -> Selector:
    """Cheapest of TS, MTF-Odd, MTF-Even; ties go to the smaller code."""
    costs = best3_costs(seq, CostModel.parse(model))
    return min(costs, key=lambda sel: (costs[sel], int(sel)))


def best3_tape(seq: RequestSequence, model: CostModel = FULL) -> AdviceTape:
    return AdviceTape(best3_oracle(seq, model).code)


def best3_follower(tape: AdviceTape, seq: RequestSequence, model: CostModel = FULL) -> CostLedger:
    model = CostModel.parse(model)
    if seq.n == 0:
        return CostLedger()
    sel = Selector.decode(tape.read(2))
    return simulate(_BEST3[sel](seq.initial_order), seq, model)


def subset_oracle(seq: RequestSequence, model: CostModel = FULL) -> AdviceTape:
    """Per-request subset bit-vectors of an optimal subset-transfer schedule."""
    return AdviceTape(opt_subset_transfer_dp(seq, model).advice_bits())


def subset_follower(tape: AdviceTape, seq: RequestSequence, model: CostModel = FULL) -> CostLedger:
    """Before each request at position i read i-1 bits and perform that
    subset transfer with paid exchanges, then access the item."""
    model = CostModel.parse(model)
    lst = seq.initial_list()
    ledger = CostLedger()
    for item in seq.requests:
        bits = tape.read(lst.position(item) - 1)
        exch = paid_rearrange(lst, subset_transfer(lst.order, item, bits))
        ledger.charge(access(lst, item, model), exch)
    return ledger


GAMMA_MAX = 15 / 14


def advice_lower_bound(gamma: float, n: float = 1) -> float:
    """Bits any deterministic algorithm must read to be gamma-competitive
    on n requests (base-2 logarithms)."""
    if not 1 < gamma <= GAMMA_MAX + 1e-12:
        raise ValueError(f"gamma must lie in (1, 15/14], got {gamma}")
    wrong = 7 * gamma - 7
    right = 8 - 7 * gamma

    def xlogx(v: float) -> float:
        return v * math.log2(v) if v > 0 else 0.0

    return max(0.0, (1 + xlogx(wrong) + xlogx(right)) / 5 * n)
