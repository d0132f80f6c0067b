"""Reference LFSRs and cycle-structure enumeration for linear machines.

For a connection polynomial p = x^n + c[n-1] x^(n-1) + ... + c[0] the
Fibonacci register holds (s[t], ..., s[t+n-1]) and shifts in
s[t+n] = sum c[i] s[t+i]. The Galois register holds a residue mod p and
multiplies it by x each step. Both output bit 0 of the state.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Literal, Protocol

from .bits import BitSequence, pack, unpack
from .gf2 import Gf2Poly

Form = Literal["fibonacci", "galois"]

CYCLE_MAX_BITS = 20


class StateSpaceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class LfsrMachine:
    connection: Gf2Poly
    state: BitSequence = ()
    form: Form = "fibonacci"

    def __post_init__(self):
        n = self.connection.degree
        if n < 1:
            raise ValueError("connection polynomial must have degree >= 1")
        if self.form not in ("fibonacci", "galois"):
            raise ValueError(f"unknown LFSR form {self.form!r}")
        state = tuple(int(b) for b in self.state) or (0,) * n
        if len(state) != n:
            raise ValueError(f"state has {len(state)} bits, register has {n}")
        object.__setattr__(self, "state", state)

    @classmethod
    def from_seed(cls, connection: Gf2Poly, seed: int, form: Form = "fibonacci") -> "LfsrMachine":
        n = connection.degree
        if seed >> n:
            raise ValueError(f"seed {seed:#x} does not fit in {n} bits")
        return cls(connection, unpack(seed, n), form)

    @property
    def width(self) -> int:
        return self.connection.degree

    def transition(self) -> Callable[[int], int]:
        n = self.width
        p = self.connection.bits
        if self.form == "galois":
            top = 1 << n

            def step(s: int) -> int:
                s <<= 1
                return s ^ p if s & top else s
        else:
            taps = p & ((1 << n) - 1)
            high = n - 1

            def step(s: int) -> int:
                return (s >> 1) | (((s & taps).bit_count() & 1) << high)

        return step

    def step(self) -> "LfsrMachine":
        return lfsr_step(self)


def lfsr_step(m: LfsrMachine) -> LfsrMachine:
    return LfsrMachine(m.connection, unpack(m.transition()(pack(m.state)), m.width), m.form)


def lfsr_sequence(m: LfsrMachine, length: int) -> BitSequence:
    step = m.transition()
    s = pack(m.state)
    out = []
    for _ in range(length):
        out.append(s & 1)
        s = step(s)
    return tuple(out)


class LinearMachine(Protocol):
    @property
    def width(self) -> int: ...

    def transition(self) -> Callable[[int], int]: ...


def cycle_structure(machine: LinearMachine, max_bits: int = CYCLE_MAX_BITS) -> dict[int, int]:
    """Map cycle length -> number of cycles over the whole state space.

    States on transient tails (singular transition maps) belong to no cycle.
    """
    n = machine.width
    if n > max_bits:
        raise StateSpaceTooLarge(f"{n}-bit state space exceeds the {max_bits}-bit bound")
    step = machine.transition()
    size = 1 << n
    # 0 unseen, 1 on the current walk, 2 finished
    mark = bytearray(size)
    cycles: Counter[int] = Counter()
    for start in range(size):
        if mark[start]:
            continue
        path = []
        s = start
        while not mark[s]:
            mark[s] = 1
            path.append(s)
            s = step(s)
        if mark[s] == 1:
            cycles[len(path) - path.index(s)] += 1
        for p in path:
            mark[p] = 2
    return dict(sorted(cycles.items()))


def state_period(machine: LinearMachine, state: int) -> int:
    """Length of the cycle eventually reached from ``state``."""
    step = machine.transition()
    seen = {}
    t = 0
    while state not in seen:
        seen[state] = t
        state = step(state)
        t += 1
    return t - seen[state]
