"""Arithmetic with polynomials over GF(2) and in extension fields GF(2^n).

Polynomials are stored as nonnegative integers: bit i is the coefficient
of x^i, so ``0b1011`` is x^3 + x + 1. Field elements are residues of such
integers modulo an irreducible polynomial.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

NEG_INF = float("-inf")

PRIMITIVITY_MAX_DEGREE = 32


class Gf2Error(ValueError):
    pass


class UnsupportedDegreeError(Gf2Error):
    pass


class ModulusMismatchError(Gf2Error):
    pass


# -- raw integer kernels ----------------------------------------------------

def _mul(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def _divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def _mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def _mulmod(a: int, b: int, m: int) -> int:
    return _mod(_mul(a, b), m)


def _powmod(a: int, e: int, m: int) -> int:
    result = 1 if m != 1 else 0
    a = _mod(a, m)
    while e:
        if e & 1:
            result = _mulmod(result, a, m)
        a = _mulmod(a, a, m)
        e >>= 1
    return result


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


def _inverse(a: int, m: int) -> int:
    # extended Euclid; only the Bezout coefficient of a is tracked
    r0, r1 = m, _mod(a, m)
    s0, s1 = 0, 1
    while r1:
        q, r = _divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 ^ _mul(q, s1)
    if r0 != 1:
        raise ZeroDivisionError("element is not invertible")
    return _mod(s0, m)


# -- polynomials --------------------------------------------------------------

_TERM = re.compile(r"^(?:(1|0)|x(?:(?:\^|\*\*)(\d+))?)$")


@dataclass(frozen=True)
class Gf2Poly:
    """A polynomial over GF(2); ``bits`` holds the coefficient mask."""

    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("coefficient mask must be nonnegative")

    @classmethod
    def parse(cls, text: str) -> "Gf2Poly":
        """Accepts "x^6+x^5+x^4+x^3+1" (any term order) or "0x79"."""
        text = text.strip().replace(" ", "")
        if text.lower().startswith("0x"):
            return cls(int(text, 16))
        if not text:
            raise Gf2Error("empty polynomial")
        bits = 0
        for term in text.split("+"):
            m = _TERM.match(term)
            if m is None:
                raise Gf2Error(f"cannot parse polynomial term {term!r}")
            if m.group(1) is not None:
                bits ^= int(m.group(1))
            else:
                bits ^= 1 << int(m.group(2) or 1)
        return cls(bits)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "Gf2Poly":
        """Coefficients listed from the constant term upwards."""
        bits = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                bits |= 1 << i
        return cls(bits)

    @classmethod
    def monomial(cls, k: int) -> "Gf2Poly":
        return cls(1 << k)

    @property
    def degree(self) -> int | float:
        """Degree, or ``NEG_INF`` for the zero polynomial."""
        return self.bits.bit_length() - 1 if self.bits else NEG_INF

    def coeff(self, i: int) -> int:
        return (self.bits >> i) & 1

    def coeffs(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.bits.bit_length())]

    def is_zero(self) -> bool:
        return self.bits == 0

    def __bool__(self):
        return self.bits != 0

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_mul(self.bits, other.bits))

    def __divmod__(self, other: "Gf2Poly") -> tuple["Gf2Poly", "Gf2Poly"]:
        q, r = _divmod(self.bits, other.bits)
        return Gf2Poly(q), Gf2Poly(r)

    def __floordiv__(self, other: "Gf2Poly") -> "Gf2Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "Gf2Poly":
        result = Gf2Poly(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __str__(self):
        if not self.bits:
            return "0"
        terms = []
        for i in range(self.bits.bit_length() - 1, -1, -1):
            if (self.bits >> i) & 1:
                terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
        return "+".join(terms)

    def to_hex(self) -> str:
        return hex(self.bits)

    def format(self, hex_form: bool = False) -> str:
        return self.to_hex() if hex_form else str(self)


X = Gf2Poly(0b10)
ONE = Gf2Poly(1)
ZERO = Gf2Poly(0)


def poly_add(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
    return p + q


def poly_mul(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
    return p * q


def poly_divmod(p: Gf2Poly, q: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
    return divmod(p, q)


def poly_gcd(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
    return Gf2Poly(_gcd(p.bits, q.bits))


class EuclidChain(NamedTuple):
    """Quotients of the Euclidean division chain and the resulting gcd."""

    quotients: list[Gf2Poly]
    gcd: Gf2Poly

    @property
    def coprime(self) -> bool:
        return self.gcd == ONE

    @property
    def all_linear(self) -> bool:
        return all(q.degree == 1 for q in self.quotients)


def euclid_quotients(p: Gf2Poly, q: Gf2Poly) -> EuclidChain:
    """Divide repeatedly (p, q) -> (q, p mod q) until the remainder vanishes.

    A non-coprime pair is not an error; check ``EuclidChain.coprime``.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    a, b = p.bits, q.bits
    quotients = []
    while b:
        quo, rem = _divmod(a, b)
        quotients.append(Gf2Poly(quo))
        a, b = b, rem
    return EuclidChain(quotients, Gf2Poly(a))


def formal_derivative(p: Gf2Poly) -> Gf2Poly:
    # d/dx x^i = i x^(i-1); only odd i survive in characteristic 2
    odd = p.bits & int("10" * ((p.bits.bit_length() + 1) // 2), 2) if p.bits else 0
    return Gf2Poly(odd >> 1)


def is_irreducible(p: Gf2Poly) -> bool:
    """Rabin-style test: gcd(x^(2^k) - x, p) = 1 for every k <= deg/2."""
    n = p.degree
    if n < 1:
        raise Gf2Error("irreducibility is defined for degree >= 1")
    m = p.bits
    power = 0b10
    for _ in range(n // 2):
        power = _mulmod(power, power, m)
        if _gcd(m, power ^ 0b10) != 1:
            return False
    return True


def _prime_factors(k: int) -> list[int]:
    factors = []
    d = 2
    while d * d <= k:
        if k % d == 0:
            factors.append(d)
            while k % d == 0:
                k //= d
        d += 1 if d == 2 else 2
    if k > 1:
        factors.append(k)
    return factors


def multiplicative_order(a: int, modulus: Gf2Poly) -> int:
    """Order of the residue ``a`` in the unit group mod an irreducible modulus."""
    n = modulus.degree
    group = (1 << n) - 1
    a = _mod(a, modulus.bits)
    if a == 0:
        raise Gf2Error("zero has no multiplicative order")
    order = group
    for f in _prime_factors(group):
        while order % f == 0 and _powmod(a, order // f, modulus.bits) == 1:
            order //= f
    return order


def is_primitive(p: Gf2Poly, max_degree: int = PRIMITIVITY_MAX_DEGREE) -> bool:
    """True iff p is irreducible and x generates the unit group mod p."""
    n = p.degree
    if n < 1:
        raise Gf2Error("primitivity is defined for degree >= 1")
    if n > max_degree:
        raise UnsupportedDegreeError(
            f"primitivity test limited to degree <= {max_degree}, got {n}")
    if not is_irreducible(p) or p.bits == 0b10:
        return False
    return multiplicative_order(0b10, p) == (1 << n) - 1


def irreducibles(n: int) -> list[Gf2Poly]:
    """All irreducible polynomials of degree n, in increasing mask order."""
    return [Gf2Poly(m) for m in range(1 << n, 1 << (n + 1)) if is_irreducible(Gf2Poly(m))]


@lru_cache(maxsize=None)
def first_primitive(n: int) -> Gf2Poly:
    for m in range(1 << n, 1 << (n + 1)):
        if is_primitive(Gf2Poly(m)):
            return Gf2Poly(m)
    raise Gf2Error(f"no primitive polynomial of degree {n}")


def berlekamp_massey(seq: Iterable[int]) -> Gf2Poly:
    """Characteristic polynomial of the shortest recurrence generating ``seq``.

    The result is x^L * C(1/x) for the usual connection polynomial C, so its
    degree is the linear complexity L and a sequence satisfying
    s[t+L] = sum(c_i s[t+i]) comes back as x^L + sum(c_i x^i).
    """
    s = [int(b) & 1 for b in seq]
    c, b = 1, 1
    length, m = 0, -1
    for n, bit in enumerate(s):
        d = bit
        for i in range(1, length + 1):
            d ^= ((c >> i) & 1) & s[n - i]
        if d:
            t = c
            c ^= b << (n - m)
            if 2 * length <= n:
                length, m, b = n + 1 - length, n, t
    rev = 0
    for i in range(length + 1):
        if (c >> i) & 1:
            rev |= 1 << (length - i)
    return Gf2Poly(rev)


# -- extension field elements --------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    """Residue class of ``value`` modulo an irreducible ``modulus``."""

    value: int
    modulus: Gf2Poly

    def __post_init__(self):
        if self.modulus.degree < 1:
            raise Gf2Error("field modulus must have degree >= 1")
        object.__setattr__(self, "value", _mod(self.value, self.modulus.bits))

    @property
    def degree(self) -> int:
        """Degree of the field extension, not of the element."""
        return self.modulus.degree

    def _check(self, other: "FieldElement"):
        if other.modulus != self.modulus:
            raise ModulusMismatchError(
                f"moduli differ: {self.modulus} vs {other.modulus}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.value ^ other.value, self.modulus)

    __sub__ = __add__

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(_mulmod(self.value, other.value, self.modulus.bits), self.modulus)

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(_powmod(self.value, e, self.modulus.bits), self.modulus)

    def __bool__(self):
        return self.value != 0

    def inverse(self) -> "FieldElement":
        return FieldElement(_inverse(self.value, self.modulus.bits), self.modulus)

    def as_poly(self) -> Gf2Poly:
        return Gf2Poly(self.value)

    def __str__(self):
        return str(Gf2Poly(self.value)).replace("x", "a")


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_pow(a: FieldElement, e: int) -> FieldElement:
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return a ** e


def field_elements(modulus: Gf2Poly) -> list[FieldElement]:
    return [FieldElement(v, modulus) for v in range(1 << modulus.degree)]


def trace(a: FieldElement) -> int:
    """a + a^2 + a^4 + ... + a^(2^(n-1)), an element of GF(2)."""
    m = a.modulus.bits
    total, conj = 0, a.value
    for _ in range(a.degree):
        total ^= conj
        conj = _mulmod(conj, conj, m)
    if total > 1:
        raise Gf2Error(f"trace left the base field; is {a.modulus} irreducible?")
    return total


@lru_cache(maxsize=None)
def trace_mask(modulus: Gf2Poly) -> int:
    """Mask t with Tr(v) = parity(v & t) in the polynomial basis."""
    return sum(trace(FieldElement(1 << j, modulus)) << j for j in range(modulus.degree))


def _solve_gf2(columns: list[int], target: int) -> int | None:
    """One z with XOR of columns[j] over set bits j of z equal to target."""
    pivots: dict[int, tuple[int, int]] = {}
    for j, col in enumerate(columns):
        combo = 1 << j
        while col:
            top = col.bit_length() - 1
            if top not in pivots:
                pivots[top] = (col, combo)
                break
            pcol, pcombo = pivots[top]
            col ^= pcol
            combo ^= pcombo
    combo = 0
    while target:
        top = target.bit_length() - 1
        if top not in pivots:
            return None
        pcol, pcombo = pivots[top]
        target ^= pcol
        combo ^= pcombo
    return combo


def solve_artin_schreier(c: FieldElement) -> frozenset[FieldElement]:
    """All z with z^2 + z = c; empty exactly when Tr(c) = 1."""
    if trace(c):
        return frozenset()
    n, m = c.degree, c.modulus.bits
    if n % 2:
        # half-trace: sum of c^(4^i), i = 0 .. (n-1)/2
        z, power = 0, c.value
        for _ in range((n + 1) // 2):
            z ^= power
            power = _mulmod(_mulmod(power, power, m), _mulmod(power, power, m), m)
    else:
        columns = [_mulmod(1 << j, 1 << j, m) ^ (1 << j) for j in range(n)]
        z = _solve_gf2(columns, c.value)
        if z is None:
            raise Gf2Error("trace-zero element without Artin-Schreier root")
    root = FieldElement(z, c.modulus)
    if root * root + root != c:
        raise Gf2Error(f"Artin-Schreier solution failed to verify; is {c.modulus} irreducible?")
    return frozenset({root, FieldElement(z ^ 1, c.modulus)})


def conjugates(a: FieldElement) -> list[FieldElement]:
    """The distinct Frobenius images a, a^2, a^4, ... in order."""
    out = [a]
    nxt = a * a
    while nxt != a:
        out.append(nxt)
        nxt = nxt * nxt
    return out


def minimal_polynomial(a: FieldElement) -> Gf2Poly:
    """Product of (x - c) over the conjugates c of a."""
    m = a.modulus.bits
    coeffs = [1]  # field values, constant term first
    for root in conjugates(a):
        r = root.value
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] ^= c
            nxt[i] ^= _mulmod(c, r, m)
        coeffs = nxt
    if any(c > 1 for c in coeffs):
        raise Gf2Error("minimal polynomial has coefficients outside GF(2)")
    return Gf2Poly.from_coeffs(coeffs)


def evaluate(p: Gf2Poly, a: FieldElement) -> FieldElement:
    """Horner evaluation of a GF(2) polynomial at a field element."""
    m = a.modulus.bits
    acc = 0
    for i in range(p.bits.bit_length() - 1, -1, -1):
        acc = _mulmod(acc, a.value, m) ^ ((p.bits >> i) & 1)
    return FieldElement(acc, a.modulus)


def cyclotomic_coset(k: int, n: int) -> frozenset[int]:
    """Orbit of k under doubling modulo 2^n - 1."""
    order = (1 << n) - 1
    k %= order
    coset = set()
    while k not in coset:
        coset.add(k)
        k = (2 * k) % order
    return frozenset(coset)


def necklace_count(n: int) -> int:
    """Number of irreducible degree-n polynomials, (1/n) sum mu(d) 2^(n/d)."""
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _mobius(d) * (1 << (n // d))
    return total // n


def _mobius(k: int) -> int:
    primes = _prime_factors(k)
    if math.prod(primes) != k:
        return 0
    return -1 if len(primes) % 2 else 1
