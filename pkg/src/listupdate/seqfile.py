"""Plain-text sequence files.

An optional first line ``#list: tok tok ...`` fixes the initial order;
the rest is whitespace-separated request tokens. Without the header the
initial order is the order of first appearance.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import ListUpdateError, RequestSequence

HEADER = "#list:"


@dataclass
class SequenceFile:
    names: list[str]  # names[i] is the token of item id i
    sequence: RequestSequence

    @property
    def ids(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def name(self, item: int) -> str:
        return self.names[item]

    def dumps(self) -> str:
        order = " ".join(self.names[i] for i in self.sequence.initial_order)
        body = " ".join(self.names[r] for r in self.sequence.requests)
        return f"{HEADER} {order}\n{body}\n" if body else f"{HEADER} {order}\n"


def loads(text: str) -> SequenceFile:
    header = None
    tokens = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith(HEADER):
            if header is not None or tokens:
                raise ListUpdateError("the #list: header must come first and only once")
            header = stripped[len(HEADER):].split()
            continue
        if stripped.startswith("#"):
            continue
        tokens.extend(stripped.split())
    names = list(header) if header is not None else list(dict.fromkeys(tokens))
    ids = {name: i for i, name in enumerate(names)}
    if len(ids) != len(names):
        raise ListUpdateError("duplicate token in the #list: header")
    try:
        reqs = [ids[t] for t in tokens]
    except KeyError as e:
        raise ListUpdateError(f"request {e.args[0]!r} is not in the #list: header") from None
    return SequenceFile(names, RequestSequence(range(len(names)), reqs))


def load(path: str) -> SequenceFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def default_names(seq: RequestSequence) -> list[str]:
    items = sorted(seq.initial_order)
    if items == [0, 1]:
        return ["x", "y"]
    return [f"a{i + 1}" for i in range(max(items, default=-1) + 1)]


def from_sequence(seq: RequestSequence, names: "list[str] | None" = None) -> SequenceFile:
    return SequenceFile(names or default_names(seq), seq)
