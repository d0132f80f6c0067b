"""Linear hybrid 90/150 cellular automata with null boundaries.

Cell i updates as x[i-1] + d[i]*x[i] + x[i+1] over GF(2), where d[i] = 0
selects rule 90 and d[i] = 1 selects rule 150. The transition matrix is
tridiagonal with the rule vector on its diagonal.

Synthesis from an irreducible polynomial p of degree n solves

    y^2 + (x^2 + x) p' y + 1 = 0  (mod p)

for y, then runs Euclid's algorithm on (p, y). Each solution gives n
linear quotients x + d[n-1], ..., x + d[0]; reading their constant terms
backwards yields a rule vector whose characteristic polynomial is p.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Iterable, Sequence

from .bits import BitSequence, format_bits, pack, unpack
from .gf2 import (
    ONE,
    ZERO,
    FieldElement,
    Gf2Error,
    Gf2Poly,
    euclid_quotients,
    formal_derivative,
    is_irreducible,
    solve_artin_schreier,
)


class NotIrreducibleError(Gf2Error):
    pass


class SynthesisInvariantError(RuntimeError):
    """Raised when a step that the theory guarantees does not hold."""


@dataclass(frozen=True, order=True)
class RuleVector:
    d: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(b) for b in self.d))
        if not self.d:
            raise ValueError("rule vector must have at least one cell")
        if any(b not in (0, 1) for b in self.d):
            raise ValueError("rule vector entries must be 0 (rule 90) or 1 (rule 150)")

    @classmethod
    def parse(cls, text: str) -> "RuleVector":
        text = text.strip().strip("[]").replace(",", "").replace(" ", "")
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"rule vector must be a 0/1 string, got {text!r}")
        return cls(tuple(int(c) for c in text))

    def __len__(self):
        return len(self.d)

    def __str__(self):
        return format_bits(self.d)


def reversal(v: RuleVector) -> RuleVector:
    return RuleVector(v.d[::-1])


def char_poly(v: RuleVector | Sequence[int]) -> Gf2Poly:
    """Three-term recurrence D_k = (x + d_k) D_{k-1} + D_{k-2}."""
    d = v.d if isinstance(v, RuleVector) else tuple(v)
    prev, cur = ZERO, ONE
    for dk in d:
        prev, cur = cur, Gf2Poly(0b10 | dk) * cur + prev
    return cur


def subpolynomials(v: RuleVector) -> tuple[Gf2Poly, Gf2Poly]:
    """Characteristic polynomials of cells 0..N-2 and of cells 1..N-1."""
    if len(v) < 2:
        raise ValueError("subpolynomials need at least two cells")
    return char_poly(v.d[:-1]), char_poly(v.d[1:])


def _require_irreducible(p: Gf2Poly):
    if p.degree < 1 or not is_irreducible(p):
        raise NotIrreducibleError(f"{p} is not irreducible")


def solve_hca_congruence(p: Gf2Poly) -> frozenset[Gf2Poly]:
    """Residues y with y^2 + (x^2+x) p' y + 1 = 0 mod p, for irreducible p.

    Substituting y = b z with b = (x^2+x) p' turns the congruence into
    z^2 + z = 1/b^2 in GF(2)[x]/(p).
    """
    _require_irreducible(p)
    b = FieldElement(((Gf2Poly(0b110) * formal_derivative(p)) % p).bits, p)
    if not b:
        # y^2 = 1, and squaring is injective
        return frozenset({ONE})
    c = (b * b).inverse()
    return frozenset((b * z).as_poly() for z in solve_artin_schreier(c))


def _vector_from_quotients(p: Gf2Poly, q: Gf2Poly) -> RuleVector:
    chain = euclid_quotients(p, q)
    n = p.degree
    if len(chain.quotients) != n or not chain.all_linear:
        raise SynthesisInvariantError(
            f"Euclid on ({p}, {q}) gave quotients "
            f"{[str(x) for x in chain.quotients]}, expected {n} linear ones")
    return RuleVector(tuple(quo.coeff(0) for quo in reversed(chain.quotients)))


def synthesize(p: Gf2Poly) -> tuple[RuleVector, ...]:
    """All 90/150 realizations of an irreducible p, canonical one first.

    For degree >= 2 there are exactly two, each the reversal of the other;
    degree 1 has the single cell x + d0.
    """
    _require_irreducible(p)
    if p.degree == 1:
        return (RuleVector((p.coeff(0),)),)
    solutions = solve_hca_congruence(p)
    if len(solutions) != 2:
        raise SynthesisInvariantError(
            f"expected two congruence solutions for {p}, found {len(solutions)}")
    vectors = sorted({_vector_from_quotients(p, q) for q in solutions})
    for v in vectors:
        if char_poly(v) != p:
            raise SynthesisInvariantError(f"{v} has characteristic polynomial {char_poly(v)}, not {p}")
    if len(vectors) == 2 and reversal(vectors[0]) != vectors[1]:
        raise SynthesisInvariantError(f"realizations {vectors[0]} and {vectors[1]} are not mirror images")
    return tuple(vectors)


def canonical_realization(p: Gf2Poly) -> RuleVector:
    return synthesize(p)[0]


@dataclass(frozen=True)
class LhcaMachine:
    """Block-diagonal 90/150 machine; a single block is an ordinary LHCA."""

    blocks: tuple[RuleVector, ...]
    state: BitSequence = field(default=())

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise ValueError("machine needs at least one block")
        object.__setattr__(self, "blocks", blocks)
        width = sum(len(b) for b in blocks)
        state = tuple(int(b) for b in self.state) or (0,) * width
        if len(state) != width:
            raise ValueError(f"state has {len(state)} bits, machine has {width} cells")
        object.__setattr__(self, "state", state)

    @classmethod
    def from_rules(cls, v: RuleVector | str, state: Iterable[int] = ()) -> "LhcaMachine":
        if isinstance(v, str):
            v = RuleVector.parse(v)
        return cls((v,), tuple(state))

    @property
    def width(self) -> int:
        return len(self.state)

    @property
    def rule_vector(self) -> RuleVector:
        """All blocks laid end to end (the diagonal of the transition matrix)."""
        return RuleVector(sum((b.d for b in self.blocks), ()))

    def char_poly(self) -> Gf2Poly:
        return reduce(lambda a, b: a * b, (char_poly(b) for b in self.blocks), ONE)

    def transition(self) -> Callable[[int], int]:
        """Packed-integer next-state map."""
        return _transition(self.blocks)

    def with_state(self, state: Iterable[int]) -> "LhcaMachine":
        return LhcaMachine(self.blocks, tuple(state))

    def step(self) -> "LhcaMachine":
        return lhca_step(self)

    def matrix(self) -> list[list[int]]:
        """Dense transition matrix (rows act on column state vectors)."""
        n = self.width
        diag = self.rule_vector.d
        starts, ends = _block_edges(self.blocks)
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = diag[i]
            if i not in starts:
                a[i][i - 1] = 1
            if i not in ends:
                a[i][i + 1] = 1
        return a


def _block_edges(blocks: Sequence[RuleVector]) -> tuple[set[int], set[int]]:
    starts, ends, pos = set(), set(), 0
    for b in blocks:
        starts.add(pos)
        pos += len(b)
        ends.add(pos - 1)
    return starts, ends


def _transition(blocks: Sequence[RuleVector]) -> Callable[[int], int]:
    starts, ends = _block_edges(blocks)
    width = max(ends) + 1
    mask = (1 << width) - 1
    # cell i takes x[i-1] unless it starts a block, x[i+1] unless it ends one
    from_left = mask & ~pack(int(i in starts) for i in range(width))
    from_right = mask & ~pack(int(i in ends) for i in range(width))
    diag = pack(sum((b.d for b in blocks), ()))

    def step(s: int) -> int:
        return ((s << 1) & from_left) ^ ((s >> 1) & from_right) ^ (s & diag)

    return step


def lhca_step(m: LhcaMachine) -> LhcaMachine:
    return m.with_state(unpack(m.transition()(pack(m.state)), m.width))


def lhca_run(m: LhcaMachine, steps: int) -> list[BitSequence]:
    """States at t = 0 .. steps."""
    step = m.transition()
    s = pack(m.state)
    rows = [m.state]
    for _ in range(steps):
        s = step(s)
        rows.append(unpack(s, m.width))
    return rows


def lhca_sequence(m: LhcaMachine, length: int, cell: int = 0) -> BitSequence:
    if not 0 <= cell < m.width:
        raise IndexError(f"cell {cell} outside 0..{m.width - 1}")
    step = m.transition()
    s = pack(m.state)
    out = []
    for _ in range(length):
        out.append((s >> cell) & 1)
        s = step(s)
    return tuple(out)


def compose(machines: Sequence[LhcaMachine]) -> LhcaMachine:
    """Block-diagonal product; its characteristic polynomial is the product."""
    if not machines:
        raise ValueError("nothing to compose")
    blocks = sum((m.blocks for m in machines), ())
    state = sum((m.state for m in machines), ())
    return LhcaMachine(blocks, state)
