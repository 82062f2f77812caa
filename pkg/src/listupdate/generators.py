"""Request-sequence families.

Two-item families run on items x = 0, y = 1 from the order [x, y]; the
l-item families use a_1..a_l = 0..l-1 from the identity order.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .core import ListUpdateError, RequestSequence

X, Y = 0, 1
PAIR = (X, Y)

_ROUND = {"0": (Y, Y, Y, X, X), "1": (Y, X, X, X, X)}


def gen_bitstring(bits: str) -> RequestSequence:
    if set(bits) - {"0", "1"}:
        raise ListUpdateError(f"defining bitstring must be binary, got {bits!r}")
    reqs = []
    for b in bits:
        reqs.extend(_ROUND[b])
    return RequestSequence(PAIR, reqs)


def gen_alpha(k: int) -> RequestSequence:
    _nonneg(k=k)
    return RequestSequence(PAIR, (X,) + (Y, X, X, X, Y, X, X, X) * k)


def gen_beta2(k_beta: int) -> RequestSequence:
    _nonneg(k_beta=k_beta)
    return RequestSequence(PAIR, (Y, Y, X, X) * k_beta)


def _repeat(items, times):
    return [a for a in items for _ in range(times)]


def gen_beta_l(l: int, m: int) -> RequestSequence:
    _at_least(l=(l, 2), m=(m, 1))
    up = list(range(l))
    down = up[::-1]
    phase = up + _repeat(up, 2) + down + _repeat(down, 2)
    return RequestSequence(up, phase * m)


def gen_gamma(l: int, s: int) -> RequestSequence:
    # triples in descending item order, so a_i gets requested after every a_j, j > i
    _at_least(l=(l, 2), s=(s, 1))
    down = list(range(l))[::-1]
    return RequestSequence(range(l), _repeat(down, 3) * (2 * s))


def gen_delta(l: int, m: int) -> RequestSequence:
    _at_least(l=(l, 2), m=(m, 1))
    up = list(range(l))
    down = up[::-1]
    phase = up + _repeat(up, 3) + down + _repeat(down, 3)
    return RequestSequence(up, phase * m)


def gen_random(l: int, n: int, seed: int) -> RequestSequence:
    _at_least(l=(l, 1), n=(n, 0))
    rng = random.Random(seed)
    return RequestSequence(range(l), [rng.randrange(l) for _ in range(n)])


def _nonneg(**kw):
    for name, v in kw.items():
        if v < 0:
            raise ListUpdateError(f"{name} must be >= 0, got {v}")


def _at_least(**kw):
    for name, (v, lo) in kw.items():
        if v < lo:
            raise ListUpdateError(f"{name} must be >= {lo}, got {v}")


FAMILIES = ("bitstring", "alpha", "beta2", "beta", "gamma", "delta", "random")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def build(self) -> RequestSequence:
        p = self.params
        f = self.family
        if f == "bitstring":
            return gen_bitstring(p.get("bits", ""))
        if f == "alpha":
            return gen_alpha(p["k"])
        if f == "beta2":
            return gen_beta2(p["k"])
        if f == "beta":
            return gen_beta_l(p["l"], p["m"])
        if f == "gamma":
            return gen_gamma(p["l"], p["s"])
        if f == "delta":
            return gen_delta(p["l"], p["m"])
        if f == "random":
            return gen_random(p["l"], p["n"], p.get("seed", 0))
        raise ListUpdateError(f"unknown family {f!r}")

    def expected_length(self) -> int:
        p = self.params
        return {
            "bitstring": lambda: 5 * len(p.get("bits", "")),
            "alpha": lambda: 8 * p["k"] + 1,
            "beta2": lambda: 4 * p["k"],
            "beta": lambda: 6 * p["l"] * p["m"],
            "gamma": lambda: 6 * p["l"] * p["s"],
            "delta": lambda: 8 * p["l"] * p["m"],
            "random": lambda: p["n"],
        }[self.family]()

    def describe(self) -> str:
        return ";".join(f"{k}={v}" for k, v in sorted(self.params.items()))
