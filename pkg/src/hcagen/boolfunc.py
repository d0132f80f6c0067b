"""Trace-monomial boolean functions f(x) = Tr(a x + b x^s) and their machines.

The exponent s comes from one of the almost-bent families (Gold, Kasami,
Welch, Niho). The output sequence u[t] = f(alpha^t) obeys the linear
recurrence whose characteristic polynomial is m_alpha * m_{alpha^s}, so it
can be produced by the block composition of the two 90/150 machines that
realize those minimal polynomials.

Index i of a truth table names the field element whose polynomial-basis
coordinates are the bits of i (bit j is the coefficient of x^j).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .bits import BitSequence
from .gf2 import (
    FieldElement,
    Gf2Error,
    Gf2Poly,
    cyclotomic_coset,
    first_primitive,
    is_primitive,
    minimal_polynomial,
    trace_mask,
    _mulmod,
    _powmod,
)
from .lhca import LhcaMachine, canonical_realization, compose
from .prng_eval import BooleanFunction

FAMILIES = ("gold", "kasami", "welch", "niho")


class ParameterError(Gf2Error):
    pass


class ConjugateCollision(Gf2Error):
    pass


@dataclass(frozen=True)
class ExponentFamily:
    name: str
    n: int
    param: int | None = None

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise ParameterError(f"unknown family {self.name!r}; choose from {FAMILIES}")
        if self.n < 1:
            raise ParameterError("field degree n must be >= 1")


def niho_r(n: int) -> int:
    if n % 2 == 0:
        raise ParameterError(f"Niho exponents need odd n = 2t+1, got n={n}")
    t = (n - 1) // 2
    return t // 2 if t % 2 == 0 else (3 * t + 1) // 2


def exponent(family: ExponentFamily) -> int:
    """The raw exponent s; side conditions are checked, s is not reduced."""
    n, i = family.n, family.param
    if family.name in ("gold", "kasami"):
        if i is None:
            raise ParameterError(f"{family.name} needs the parameter i")
        if math.gcd(i, n) != 1:
            raise ParameterError(f"{family.name}: condition gcd(i, n) = 1 fails for i={i}, n={n}")
        if not 1 <= i <= n / 2:
            raise ParameterError(f"{family.name}: condition 1 <= i <= n/2 fails for i={i}, n={n}")
        if family.name == "gold":
            return 2 ** i + 1
        return 2 ** (2 * i) - 2 ** i + 1
    if family.name == "welch":
        if n % 2 == 0:
            raise ParameterError(f"welch: n must be odd, got n={n}")
        return 2 ** ((n - 1) // 2) + 3
    r = niho_r(n)
    if i is not None and i != r:
        raise ParameterError(f"niho: r is fixed by n={n} to {r}, got r={i}")
    if not 1 <= r <= n:
        raise ParameterError(f"niho: condition 1 <= r <= n fails for r={r}, n={n}")
    return 2 ** (2 * r) + 2 ** r - 1


@dataclass(frozen=True)
class TraceMonomial:
    a: FieldElement
    b: FieldElement
    s: int

    def __post_init__(self):
        if self.a.modulus != self.b.modulus:
            raise Gf2Error("a and b must live in the same field")
        if self.s < 0:
            raise ValueError("exponent must be nonnegative")

    @classmethod
    def build(cls, a: int, b: int, s: int, n: int | None = None,
              modulus: Gf2Poly | None = None) -> "TraceMonomial":
        if modulus is None:
            if n is None:
                raise ValueError("give the field degree or a modulus")
            modulus = first_primitive(n)
        return cls(FieldElement(a, modulus), FieldElement(b, modulus), s)

    @property
    def modulus(self) -> Gf2Poly:
        return self.a.modulus

    @property
    def n(self) -> int:
        return self.modulus.degree

    def __call__(self, x: FieldElement) -> int:
        m = self.modulus.bits
        v = _mulmod(self.a.value, x.value, m) ^ _mulmod(self.b.value, _powmod(x.value, self.s, m), m)
        return (v & trace_mask(self.modulus)).bit_count() & 1


def truth_table(f: TraceMonomial) -> BooleanFunction:
    m = f.modulus.bits
    tmask = trace_mask(f.modulus)
    a, b, s = f.a.value, f.b.value, f.s
    table = []
    for x in range(1 << f.n):
        v = _mulmod(a, x, m) ^ _mulmod(b, _powmod(x, s, m), m) if x else 0
        table.append((v & tmask).bit_count() & 1)
    return BooleanFunction(f.n, tuple(table))


def power_sequence(f: TraceMonomial, length: int) -> BitSequence:
    """u[t] = Tr(a alpha^t + b alpha^(s t)) with alpha = x mod the modulus."""
    if not is_primitive(f.modulus):
        raise Gf2Error(f"power sequences need a primitive modulus, {f.modulus} is not")
    m = f.modulus.bits
    tmask = trace_mask(f.modulus)
    alpha_s = _powmod(0b10, f.s, m)
    u, v = f.a.value, f.b.value
    out = []
    for _ in range(length):
        out.append(((u ^ v) & tmask).bit_count() & 1)
        u = _mulmod(u, 0b10, m)
        v = _mulmod(v, alpha_s, m)
    return tuple(out)


def _check_distinct(s: int, modulus: Gf2Poly):
    n = modulus.degree
    if cyclotomic_coset(s, n) == cyclotomic_coset(1, n):
        raise ConjugateCollision(
            f"alpha^{s} is a conjugate of alpha in GF(2^{n}); m_alpha = m_alpha^s")


def parity_check_poly(s: int, modulus: Gf2Poly) -> Gf2Poly:
    """m_alpha * m_{alpha^s} for alpha = x mod a primitive modulus."""
    if not is_primitive(modulus):
        raise Gf2Error(f"{modulus} is not primitive")
    _check_distinct(s, modulus)
    alpha = FieldElement(0b10, modulus)
    return minimal_polynomial(alpha) * minimal_polynomial(alpha ** s)


def realize_as_lhca(s: int, modulus: Gf2Poly) -> LhcaMachine:
    """Block machine for m_alpha and m_{alpha^s} (canonical realizations)."""
    if not is_primitive(modulus):
        raise Gf2Error(f"{modulus} is not primitive")
    _check_distinct(s, modulus)
    alpha = FieldElement(0b10, modulus)
    factors = [minimal_polynomial(alpha), minimal_polynomial(alpha ** s)]
    return compose([LhcaMachine.from_rules(canonical_realization(p)) for p in factors])
