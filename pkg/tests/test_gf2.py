import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcagen.gf2 import (
    NEG_INF,
    FieldElement,
    Gf2Poly,
    UnsupportedDegreeError,
    ModulusMismatchError,
    berlekamp_massey,
    euclid_quotients,
    evaluate,
    field_elements,
    field_mul,
    field_pow,
    formal_derivative,
    irreducibles,
    is_irreducible,
    is_primitive,
    minimal_polynomial,
    necklace_count,
    poly_add,
    poly_divmod,
    poly_mul,
    solve_artin_schreier,
    trace,
    trace_mask,
)
from hcagen.lfsr import LfsrMachine, lfsr_sequence

import oracles

P = Gf2Poly.parse
polys = st.integers(min_value=0, max_value=(1 << 65) - 1).map(Gf2Poly)
nonzero_polys = st.integers(min_value=1, max_value=(1 << 65) - 1).map(Gf2Poly)


def fe(v, mod="x^3+x+1"):
    return FieldElement(v, P(mod))


# -- parsing and formatting ----------------------------------------------------

def test_parse_symbolic_and_hex_agree():
    assert P("x^6+x^5+x^4+x^3+1") == P("0x79") == P("1 + x^3 + x^4+x^5+x^6")
    assert P("x**2 + x + 1").bits == 0b111
    assert P("x+x") == Gf2Poly(0)


def test_format_round_trip():
    p = P("x^6+x^5+x^4+x^3+1")
    assert str(p) == "x^6+x^5+x^4+x^3+1"
    assert p.to_hex() == "0x79"
    assert P(str(p)) == p == P(p.to_hex())
    assert str(Gf2Poly(0)) == "0"


@pytest.mark.parametrize("bad", ["", "y^2", "x^", "2x"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        P(bad)


def test_zero_degree_sentinel():
    assert Gf2Poly(0).degree == NEG_INF
    assert Gf2Poly(1).degree == 0
    assert Gf2Poly(0).degree != Gf2Poly(1).degree


# -- ring operations -----------------------------------------------------------

@pytest.mark.parametrize("p, q, expected", [
    ("x+1", "x+1", "0"),
    ("x^2", "x+1", "x^2+x+1"),
    ("x^3+x", "x^3+1", "x+1"),
])
def test_poly_add(p, q, expected):
    assert poly_add(P(p), P(q)) == P(expected)


@pytest.mark.parametrize("p, q, expected", [
    ("x+1", "x+1", "x^2+1"),
    ("x^5+x^2+1", "1", "x^5+x^2+1"),
    ("x^2+x+1", "x+1", "x^3+1"),
])
def test_poly_mul(p, q, expected):
    assert poly_mul(P(p), P(q)) == P(expected)


@pytest.mark.parametrize("p, q, quo, rem", [
    ("x^2+x+1", "x", "x+1", "1"),
    ("x^4+x+1", "x^4+x+1", "1", "0"),
    ("1", "x+1", "0", "1"),
])
def test_poly_divmod(p, q, quo, rem):
    assert poly_divmod(P(p), P(q)) == (P(quo), P(rem))


def test_divmod_by_zero():
    with pytest.raises(ZeroDivisionError):
        poly_divmod(P("x"), Gf2Poly(0))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + a == Gf2Poly(0)
    assert a * b == b * a


@given(nonzero_polys, nonzero_polys)
def test_degree_of_product(a, b):
    assert (a * b).degree == a.degree + b.degree


@given(polys, nonzero_polys)
def test_divmod_round_trip(p, q):
    quo, rem = divmod(p, q)
    assert q * quo + rem == p
    assert rem.degree < q.degree


# -- Euclid chain --------------------------------------------------------------

def test_euclid_chain_two_steps():
    chain = euclid_quotients(P("x^2+x+1"), P("x"))
    assert chain.quotients == [P("x+1"), P("x")]
    assert chain.coprime and chain.all_linear


@pytest.mark.parametrize("d", [0, 1])
def test_euclid_single_step(d):
    chain = euclid_quotients(Gf2Poly(0b10 | d), P("1"))
    assert chain.quotients == [Gf2Poly(0b10 | d)]


def test_euclid_non_coprime_is_flagged():
    # x^2 = x * x + 0: one quotient, gcd x
    chain = euclid_quotients(P("x^2"), P("x"))
    assert chain.quotients == [P("x")]
    assert chain.gcd == P("x")
    assert not chain.coprime


# -- derivative ----------------------------------------------------------------

@pytest.mark.parametrize("p, expected", [
    ("x^2+x+1", "1"),
    ("x^2", "0"),
    ("x^6+x^5+x^4+x^3+1", "x^4+x^2"),
    ("x^7+x", "x^6+1"),
])
def test_formal_derivative(p, expected):
    assert formal_derivative(P(p)) == P(expected)


@given(polys, polys)
def test_derivative_leibniz(a, b):
    d = formal_derivative
    assert d(a * b) == d(a) * b + a * d(b)


# -- irreducibility and primitivity ----------------------------------------------

@pytest.mark.parametrize("p, expected", [
    ("x^2+x+1", True),
    ("x^2+1", False),
    ("x^6+x^5+x^4+x^3+1", False),
    ("x", True),
    ("x+1", True),
])
def test_is_irreducible_examples(p, expected):
    assert is_irreducible(P(p)) is expected
    assert oracles.trial_division_irreducible(P(p).bits) is expected


def test_counter_example_polynomial_factors():
    assert P("x^6+x^5+x^4+x^3+1") % P("x^2+x+1") == Gf2Poly(0)


def test_irreducibility_agrees_with_trial_division_up_to_degree_10():
    for bits in range(2, 1 << 11):
        assert is_irreducible(Gf2Poly(bits)) == oracles.trial_division_irreducible(bits), bin(bits)


@pytest.mark.parametrize("n", range(1, 13))
def test_irreducible_counts_match_necklace_formula(n):
    assert len(irreducibles(n)) == necklace_count(n)


def test_necklace_known_value():
    assert necklace_count(12) == 335


@pytest.mark.parametrize("p, expected", [
    ("x^4+x+1", True),
    ("x^4+x^3+x^2+x+1", False),
    ("x+1", True),
    ("x", False),
    ("x^4+x^2+1", False),
])
def test_is_primitive_examples(p, expected):
    assert is_primitive(P(p)) is expected


def test_primitive_oracle_order_of_x():
    # enumerate powers of x until they return to 1
    for p in irreducibles(6):
        m, k, v = p.bits, 1, 0b10
        while v != 1:
            v = oracles.field_mul(v, 0b10, m)
            k += 1
            if k > 64:
                break
        assert is_primitive(p) == (k == 63 and p.bits != 0b10)


def test_primitivity_degree_bound():
    with pytest.raises(UnsupportedDegreeError):
        is_primitive(P("x^33+x^13+1"))
    assert is_primitive(P("x^32+x^22+x^2+x+1"))


# -- Berlekamp-Massey ------------------------------------------------------------

def test_bm_zero_sequence():
    assert berlekamp_massey([0] * 20) == P("1")


def test_bm_round_trip_x4_x_1():
    seq = lfsr_sequence(LfsrMachine.from_seed(P("x^4+x+1"), 0b0001), 30)
    assert berlekamp_massey(seq) == P("x^4+x+1")


def test_bm_impulse():
    seq = [1, 0, 0, 0, 0, 0, 0, 0]
    c = berlekamp_massey(seq)
    assert c == P("x")
    assert oracles.satisfies_recurrence(seq, c)


def test_bm_result_generates_sequence():
    seq = [1, 1, 0, 1, 0, 0, 0, 1, 1, 1, 0, 1]
    c = berlekamp_massey(seq)
    assert oracles.satisfies_recurrence(seq, c)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12).flatmap(
    lambda n: st.tuples(st.sampled_from(irreducibles(n)), st.integers(1, (1 << n) - 1))))
def test_bm_recovers_irreducible_connection(case):
    p, seed = case
    n = p.degree
    seq = oracles.recurrence_sequence(p, [(seed >> i) & 1 for i in range(n)], 2 * n)
    assert berlekamp_massey(seq) == p


# -- field arithmetic -----------------------------------------------------------

def test_field_mul_gf4():
    a = FieldElement(0b10, P("x^2+x+1"))
    assert field_mul(a, a) == FieldElement(0b11, P("x^2+x+1"))


def test_field_pow():
    a = FieldElement(0b10, P("x^4+x+1"))
    assert field_pow(a, 0) == FieldElement(1, P("x^4+x+1"))
    assert field_pow(a, 15) == FieldElement(1, P("x^4+x+1"))
    v = FieldElement(1, P("x^4+x+1"))
    for _ in range(15):
        v = v * a
    assert v == field_pow(a, 15)


def test_field_modulus_mismatch():
    with pytest.raises(ModulusMismatchError):
        FieldElement(1, P("x^2+x+1")) * FieldElement(1, P("x^3+x+1"))


def test_inverse():
    for a in field_elements(P("x^5+x^2+1"))[1:]:
        assert a * a.inverse() == FieldElement(1, a.modulus)


def test_value_is_reduced():
    assert FieldElement(0b100, P("x^2+x+1")).value == 0b11


# -- trace ---------------------------------------------------------------------

def test_trace_examples():
    assert trace(fe(0)) == 0
    assert trace(FieldElement(0b10, P("x^2+x+1"))) == 1


def test_trace_linear_over_gf8():
    elems = field_elements(P("x^3+x+1"))
    for a in elems:
        for b in elems:
            assert trace(a + b) == trace(a) ^ trace(b)


@pytest.mark.parametrize("n", range(1, 7))
def test_trace_frobenius_invariant(n):
    for p in irreducibles(n):
        for a in field_elements(p):
            assert trace(a * a) == trace(a)
            assert trace(a) == (a.value & trace_mask(p)).bit_count() % 2


# -- Artin-Schreier ------------------------------------------------------------

def test_artin_schreier_zero():
    assert solve_artin_schreier(fe(0)) == {fe(0), fe(1)}


def test_artin_schreier_gf4_alpha_has_no_root():
    assert solve_artin_schreier(FieldElement(0b10, P("x^2+x+1"))) == frozenset()


def test_artin_schreier_gf8_matches_brute_force():
    m = P("x^3+x+1")
    alpha3 = FieldElement(0b10, m) ** 3
    expected = oracles.brute_artin_schreier(alpha3.value, m.bits)
    assert {z.value for z in solve_artin_schreier(alpha3)} == expected == set()
    alpha = FieldElement(0b10, m)
    got = {z.value for z in solve_artin_schreier(alpha)}
    assert got == oracles.brute_artin_schreier(alpha.value, m.bits)
    assert len(got) == 2


@pytest.mark.parametrize("n", range(1, 9))
def test_artin_schreier_exhaustive(n):
    for p in irreducibles(n)[:3]:
        for c in field_elements(p):
            got = {z.value for z in solve_artin_schreier(c)}
            assert got == oracles.brute_artin_schreier(c.value, p.bits)
            assert (len(got) == 0) == (trace(c) == 1)


def test_artin_schreier_even_degree_above_16():
    p = P("x^18+x^7+1")
    assert is_irreducible(p)
    c = FieldElement(0b1011011, p)
    c = c * c + c  # guaranteed solvable
    roots = solve_artin_schreier(c)
    assert len(roots) == 2
    assert all(z * z + z == c for z in roots)


# -- minimal polynomials -------------------------------------------------------

def test_minimal_polynomial_examples():
    m = P("x^3+x+1")
    alpha = FieldElement(0b10, m)
    assert minimal_polynomial(alpha) == m
    assert minimal_polynomial(alpha ** 3) == P("x^3+x^2+1")
    assert minimal_polynomial(FieldElement(1, m)) == P("x+1")
    assert minimal_polynomial(FieldElement(0, m)) == P("x")


@pytest.mark.parametrize("n", range(1, 7))
def test_minimal_polynomial_vanishes_and_is_irreducible(n):
    for p in irreducibles(n):
        field_poly = Gf2Poly((1 << (1 << n)) | 0b10)  # x^(2^n) - x
        for a in field_elements(p):
            mp = minimal_polynomial(a)
            assert not evaluate(mp, a)
            assert is_irreducible(mp)
            assert field_poly % mp == Gf2Poly(0)
