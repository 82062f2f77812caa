"""Text compression driven by a list update algorithm.

Every character is written as the unary code of its position in the
algorithm's list before the list is reorganized, so the payload size in
bits is exactly the full-model access cost.

File layout::

    b"LUP1" | algorithm byte | coder byte | varint alphabet size
    | per symbol: varint utf-8 length, utf-8 bytes
    | advice byte (best3 only: the 2-bit selector)
    | code bits, MSB first, final byte padded with 1s
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .advice import Selector, best3_oracle
from .algorithms import make_algorithm
from .core import FULL, ListUpdateError, RequestSequence

MAGIC = b"LUP1"
UNARY = 0
ALGORITHM_IDS = {"mtf": 0, "ts": 1, "mtfo": 2, "mtfe": 3, "best3": 4}
_BY_BYTE = {v: k for k, v in ALGORITHM_IDS.items()}


class CompressionError(ListUpdateError):
    pass


@dataclass
class Encoded:
    algorithm: str
    alphabet: tuple[str, ...]
    bits: str
    selector: Optional[Selector] = None

    @property
    def bit_length(self) -> int:
        return len(self.bits)


def unary(position: int) -> str:
    return "1" * (position - 1) + "0"


def _resolve(alg: str, selector: Optional[Selector]) -> str:
    if alg not in ALGORITHM_IDS:
        raise CompressionError(f"compressor supports {sorted(ALGORITHM_IDS)}, got {alg!r}")
    if alg == "best3":
        if selector is None:
            raise CompressionError("best3 needs its selector")
        return selector.alg_id
    return alg


def first_appearance(text: str) -> tuple[str, ...]:
    return tuple(dict.fromkeys(text))


def compress(text: str, alg: str, alphabet: Optional[Sequence[str]] = None) -> Encoded:
    alphabet = tuple(alphabet) if alphabet is not None else first_appearance(text)
    ids = {sym: i for i, sym in enumerate(alphabet)}
    try:
        reqs = [ids[ch] for ch in text]
    except KeyError as e:
        raise CompressionError(f"symbol {e.args[0]!r} is not in the alphabet") from None
    selector = None
    if alg == "best3":
        selector = best3_oracle(RequestSequence(range(len(alphabet)), reqs), FULL)
    runner = make_algorithm(_resolve(alg, selector), range(len(alphabet)))
    out = []
    for r in reqs:
        out.append(unary(runner.list.position(r)))
        runner.serve(r, FULL)
    return Encoded(alg, alphabet, "".join(out), selector)


def decompress(bits: str, alg: str, alphabet: Sequence[str], selector: Optional[Selector] = None) -> str:
    alphabet = tuple(alphabet)
    runner = make_algorithm(_resolve(alg, selector), range(len(alphabet)))
    out = []
    pos = 1
    for b in bits:
        if b == "1":
            pos += 1
            if pos > len(alphabet):
                raise CompressionError(f"unary code longer than the alphabet ({len(alphabet)})")
            continue
        if b != "0":
            raise CompressionError(f"bad bit {b!r}")
        item = runner.list.item_at(pos)
        out.append(alphabet[item])
        runner.serve(item, FULL)
        pos = 1
    if pos != 1:
        raise CompressionError("bit stream ends inside a unary code")
    return "".join(out)


def _varint(n: int) -> bytes:
    out = bytearray()
    while True:
        byte = n & 0x7F
        n >>= 7
        if n:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def _read_varint(data: bytes, i: int) -> tuple[int, int]:
    shift = value = 0
    while True:
        if i >= len(data):
            raise CompressionError("truncated varint")
        byte = data[i]
        i += 1
        value |= (byte & 0x7F) << shift
        if not byte & 0x80:
            return value, i
        shift += 7


def to_bytes(enc: Encoded) -> bytes:
    out = bytearray(MAGIC)
    out.append(ALGORITHM_IDS[enc.algorithm])
    out.append(UNARY)
    out += _varint(len(enc.alphabet))
    for sym in enc.alphabet:
        raw = sym.encode("utf-8")
        out += _varint(len(raw)) + raw
    if enc.algorithm == "best3":
        out.append(int(enc.selector))
    bits = enc.bits + "1" * (-len(enc.bits) % 8)
    out += bytes(int(bits[i:i + 8], 2) for i in range(0, len(bits), 8))
    return bytes(out)


def from_bytes(data: bytes) -> Encoded:
    if data[:4] != MAGIC:
        raise CompressionError("not an LUP1 file")
    if len(data) < 6:
        raise CompressionError("truncated header")
    try:
        alg = _BY_BYTE[data[4]]
    except KeyError:
        raise CompressionError(f"unknown algorithm byte {data[4]}") from None
    if data[5] != UNARY:
        raise CompressionError(f"unknown coder byte {data[5]}")
    size, i = _read_varint(data, 6)
    alphabet = []
    for _ in range(size):
        length, i = _read_varint(data, i)
        if i + length > len(data):
            raise CompressionError("truncated alphabet")
        alphabet.append(data[i:i + length].decode("utf-8"))
        i += length
    selector = None
    if alg == "best3":
        if i >= len(data):
            raise CompressionError("missing advice byte")
        if data[i] not in Selector._value2member_map_:
            raise CompressionError(f"invalid advice byte {data[i]}")
        selector = Selector(data[i])
        i += 1
    bits = "".join(format(b, "08b") for b in data[i:])
    # codes end in 0, so trailing 1s are padding
    stripped = bits.rstrip("1")
    if len(bits) - len(stripped) >= 8:
        raise CompressionError("bit stream ends inside a unary code")
    return Encoded(alg, tuple(alphabet), stripped, selector)


def compress_file(text: str, alg: str, alphabet: Optional[Sequence[str]] = None) -> bytes:
    return to_bytes(compress(text, alg, alphabet))


def decompress_file(data: bytes) -> str:
    enc = from_bytes(data)
    return decompress(enc.bits, enc.algorithm, enc.alphabet, enc.selector)
