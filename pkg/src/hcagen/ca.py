"""Elementary (radius 1, two-state) cellular automata on finite arrays.

Neighborhoods are indexed by the 3-bit number x[i-1] x[i] x[i+1], so bit k
of a rule number is the image of neighborhood k. Rule 30 written from
neighborhood 111 down to 000 reads 00011110.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

from .bits import BitSequence, format_bits, pack, parse_bits, unpack

Boundary = Literal["cyclic", "null"]
BOUNDARIES = ("cyclic", "null")


@dataclass(frozen=True)
class Rule:
    number: int

    def __post_init__(self):
        if not 0 <= self.number <= 255:
            raise ValueError(f"elementary rule number must be in 0..255, got {self.number}")

    @property
    def table(self) -> tuple[int, ...]:
        """Outputs indexed by neighborhood value 0..7."""
        return tuple((self.number >> k) & 1 for k in range(8))

    @classmethod
    def from_table(cls, table) -> "Rule":
        return cls(pack(table))

    def word(self) -> str:
        """Display form: images of 111, 110, ..., 000."""
        return format(self.number, "08b")

    def __call__(self, left: int, center: int, right: int) -> int:
        return (self.number >> (4 * left + 2 * center + right)) & 1


def rule_from_number(n: int) -> Rule:
    return Rule(n)


@dataclass(frozen=True)
class Configuration:
    cells: BitSequence
    boundary: Boundary = "cyclic"

    def __post_init__(self):
        if len(self.cells) < 1:
            raise ValueError("a configuration needs at least one cell")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"unknown boundary {self.boundary!r}")
        object.__setattr__(self, "cells", tuple(int(c) for c in self.cells))

    @classmethod
    def parse(cls, text: str, length: int | None = None,
              boundary: Boundary = "cyclic") -> "Configuration":
        return cls(parse_bits(text, length), boundary)

    @classmethod
    def single(cls, size: int, index: int | None = None,
               boundary: Boundary = "cyclic") -> "Configuration":
        """One live cell (default: the center cell size // 2)."""
        index = size // 2 if index is None else index
        return cls(tuple(int(i == index) for i in range(size)), boundary)

    def __len__(self):
        return len(self.cells)

    def __str__(self):
        return format_bits(self.cells)


def _stepper(rule: Rule, size: int, boundary: Boundary) -> Callable[[int], int]:
    """Packed-integer step: cell i lives at bit i."""
    mask = (1 << size) - 1
    minterms = [k for k in range(8) if (rule.number >> k) & 1]
    cyclic = boundary == "cyclic"
    top = size - 1

    def step(s: int) -> int:
        if cyclic:
            left = ((s << 1) | (s >> top)) & mask
            right = (s >> 1) | ((s & 1) << top)
        else:
            left = (s << 1) & mask
            right = s >> 1
        nl, nc, nr = left ^ mask, s ^ mask, right ^ mask
        out = 0
        for k in minterms:
            out |= ((left if k & 4 else nl)
                    & (s if k & 2 else nc)
                    & (right if k & 1 else nr))
        return out

    return step


def step(c: Configuration, r: Rule) -> Configuration:
    n = len(c)
    return Configuration(unpack(_stepper(r, n, c.boundary)(pack(c.cells)), n), c.boundary)


def evolve(c: Configuration, r: Rule, t: int) -> list[Configuration]:
    if t < 0:
        raise ValueError("number of steps must be >= 0")
    n = len(c)
    stepper = _stepper(r, n, c.boundary)
    s = pack(c.cells)
    rows = [c]
    for _ in range(t):
        s = stepper(s)
        rows.append(Configuration(unpack(s, n), c.boundary))
    return rows


def cell_sequence(c: Configuration, r: Rule, cell: int, length: int) -> BitSequence:
    """Values x[cell] at t = 0 .. length-1 (Wolfram's single-cell generator)."""
    n = len(c)
    if not 0 <= cell < n:
        raise IndexError(f"cell {cell} outside 0..{n - 1}")
    stepper = _stepper(r, n, c.boundary)
    s = pack(c.cells)
    out = []
    for _ in range(length):
        out.append((s >> cell) & 1)
        s = stepper(s)
    return tuple(out)


def _mirror_index(k: int) -> int:
    return ((k & 1) << 2) | (k & 2) | (k >> 2)


def reflect(r: Rule) -> Rule:
    """f'(a, b, c) = f(c, b, a)."""
    return Rule.from_table(r.table[_mirror_index(k)] for k in range(8))


def conjugate(r: Rule) -> Rule:
    """Swap the roles of 0 and 1: complement of the mirrored table word."""
    return Rule.from_table(1 - r.table[7 - k] for k in range(8))


def conjugate_reflect(r: Rule) -> Rule:
    return conjugate(reflect(r))


def diagram_text(rows: list[Configuration]) -> str:
    return "\n".join(str(row) for row in rows) + "\n"


def diagram_pbm(rows: list[Configuration]) -> str:
    """Plain PBM (P1); 1 is a black pixel, as in the usual diagrams."""
    width = len(rows[0]) if rows else 0
    lines = ["P1", f"{width} {len(rows)}"]
    lines += [" ".join(str(b) for b in row.cells) for row in rows]
    return "\n".join(lines) + "\n"
