"""Bit sequence helpers.

A bit sequence is a plain ``tuple`` of 0/1 ints. Machines work on packed
integers internally (bit ``i`` of the integer is element ``i`` of the
sequence); the helpers here convert between the two and parse the text
forms accepted on the command line.
"""
from __future__ import annotations

from typing import Iterable

BitSequence = tuple[int, ...]


def to_bits(values: Iterable[int]) -> BitSequence:
    out = tuple(int(v) for v in values)
    if any(v not in (0, 1) for v in out):
        raise ValueError("bit sequence may only contain 0 and 1")
    return out


def pack(bits: Iterable[int]) -> int:
    """Pack a bit sequence into an int, element i at bit position i."""
    value = 0
    for i, b in enumerate(bits):
        if b:
            value |= 1 << i
    return value


def unpack(value: int, length: int) -> BitSequence:
    return tuple((value >> i) & 1 for i in range(length))


def parse_bits(text: str, length: int | None = None) -> BitSequence:
    """Parse a 0/1 string ("00010000") or a hex mask ("0x10") with a length.

    Hex masks follow the packed convention: bit i of the number is cell i.
    """
    text = text.strip()
    if text.lower().startswith("0x"):
        if length is None:
            raise ValueError("hex bit strings need an explicit length")
        value = int(text, 16)
        if value >> length:
            raise ValueError(f"hex value {text} does not fit in {length} bits")
        return unpack(value, length)
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a 0/1 string: {text!r}")
    bits = tuple(int(c) for c in text)
    if length is not None and len(bits) != length:
        raise ValueError(f"expected {length} bits, got {len(bits)}")
    return bits


def format_bits(bits: Iterable[int]) -> str:
    return "".join("1" if b else "0" for b in bits)


def bits_from_bytes(data: bytes) -> BitSequence:
    """Most significant bit of each byte first."""
    return tuple((byte >> (7 - k)) & 1 for byte in data for k in range(8))


def bits_to_bytes(bits: Iterable[int]) -> bytes:
    bits = list(bits)
    out = bytearray()
    for start in range(0, len(bits) - len(bits) % 8, 8):
        byte = 0
        for b in bits[start:start + 8]:
            byte = (byte << 1) | b
        out.append(byte)
    return bytes(out)


def read_sequence(data: bytes) -> BitSequence:
    """Decode input that is either ASCII 0/1 text or raw bytes."""
    stripped = bytes(c for c in data if c not in b" \t\r\n")
    if stripped and set(stripped) <= {ord("0"), ord("1")}:
        return tuple(c - ord("0") for c in stripped)
    return bits_from_bytes(data)
