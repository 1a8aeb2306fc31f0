import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from charsum.characters import (
    CharacterValue,
    DirichletCharacter,
    conductor,
    conductor_by_scan,
    conjugate,
    enumerate_characters,
    enumerate_primitive,
    evaluate,
    induce_primitive,
    is_primitive,
    multiply,
    order,
    parity,
    parse_label,
    primitive_characters,
    principal,
    trivial,
    unit_group,
)


def _mult_order(g, n):
    k, x = 1, g % n
    while x != 1:
        x = x * g % n
        k += 1
    return k


def test_unit_group_examples():
    s2 = unit_group(2)
    assert s2.generators == () and s2.phi == 1
    assert unit_group(5).generators == ((2, 4),)
    assert unit_group(8).generators == ((7, 2), (5, 2))


def test_unit_group_invariants():
    for q in range(1, 400):
        s = unit_group(q)
        assert math.prod(s.orders) == s.phi
        for g, o in s.generators:
            assert math.gcd(g, q) == 1
        # each generator has its stated order in its own local component
        for comp in s.components:
            pa = comp.prime**comp.exponent
            for x, o in comp.generators:
                assert _mult_order(x, pa) == o


def test_local_generator_shapes():
    for p, a in [(3, 1), (3, 4), (5, 2), (2, 1), (2, 2), (2, 3), (2, 6)]:
        comp = unit_group(p**a).components[0]
        n = len(comp.generators)
        if p > 2:
            assert n == 1
        elif a == 1:
            assert n == 0
        elif a == 2:
            assert [o for _, o in comp.generators] == [2]
        else:
            assert [(x % p**a, o) for x, o in comp.generators] == [(p**a - 1, 2), (5, 2 ** (a - 2))]


def test_evaluate_examples():
    chi = parse_label("5:2")
    assert evaluate(chi, 2) == CharacterValue(Fraction(1, 2))
    assert evaluate(chi, 10).is_zero
    assert evaluate(principal(12), 5) == CharacterValue(Fraction(0))
    assert complex(evaluate(chi, 2)) == -1


def test_character_value_complex_exact_at_quarter_turns():
    for t, z in [(Fraction(0), 1), (Fraction(1, 4), 1j), (Fraction(1, 2), -1), (Fraction(3, 4), -1j)]:
        assert complex(CharacterValue(t)) == z
    v = CharacterValue(Fraction(1, 7))
    assert abs(complex(v) - complex(math.cos(2 * math.pi / 7), math.sin(2 * math.pi / 7))) < 1e-12
    assert complex(v.conjugate()) == complex(v).conjugate()


def test_labels_round_trip_and_errors():
    for q in (1, 2, 8, 12, 35, 64):
        for chi in enumerate_characters(q):
            assert parse_label(chi.label) == chi
    assert parse_label("1:") == trivial()
    for bad in ("5:9", "5", "5:1,1", "0:", "x:1", "8:1"):
        with pytest.raises(ValueError):
            parse_label(bad)


def test_exhaustive_multiplicativity_periodicity_zeros():
    for q in range(1, 201):
        for chi in enumerate_characters(q) if q <= 60 else enumerate_characters(q)[:6]:
            rot = chi.rotation_table()
            E = chi.structure.exponent
            units = np.gcd(np.arange(q), q) == 1
            assert np.all((rot >= 0) == units)
            a = np.arange(q)[:, None]
            b = np.arange(q)[None, :]
            ra, rb, rab = rot[a], rot[b], rot[(a * b) % q]
            both = (ra >= 0) & (rb >= 0)
            assert np.all(rab[both] == (ra + rb)[both] % E)
            assert np.all(rab[~both] == -1)
    chi = parse_label("35:1,2")
    for n in (3, 38, 3 + 35 * 10**6, -32):
        assert evaluate(chi, n) == evaluate(chi, 3)


def test_orthogonality():
    for q in range(1, 201):
        chars = enumerate_characters(q)
        vals = np.array([c.values() for c in chars])
        for c, v in zip(chars, vals):
            if not c.is_principal:
                assert abs(v.sum()) < 1e-9
        col = vals.sum(axis=0)
        for n in range(q):
            if math.gcd(n, q) == 1 and n % q != 1 % q:
                assert abs(col[n]) < 1e-9
            elif math.gcd(n, q) == 1:
                assert abs(col[n] - len(chars)) < 1e-9


def test_multiply_examples():
    chi = parse_label("7:1")
    assert multiply(chi, conjugate(chi)) == principal(7)
    prod = multiply(parse_label("3:1"), parse_label("4:1"))
    assert prod.modulus == 12 and conductor(prod) == 12
    # brute-force value table mod 12
    for n in range(12):
        assert complex(evaluate(prod, n)) == complex(evaluate(parse_label("3:1"), n)) * complex(
            evaluate(parse_label("4:1"), n)
        )
    assert multiply(chi, trivial()) == chi


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 120), st.integers(1, 120), st.data())
def test_multiply_pointwise(q1, q2, data):
    c1 = data.draw(st.sampled_from(enumerate_characters(q1)))
    c2 = data.draw(st.sampled_from(enumerate_characters(q2)))
    prod = multiply(c1, c2)
    assert prod.modulus == math.lcm(q1, q2)
    for n in range(-5, 2 * prod.modulus, max(1, prod.modulus // 40)):
        assert evaluate(prod, n) == evaluate(c1, n) * evaluate(c2, n)


def test_parity_order_examples():
    assert parity(principal(9)) == 1 and order(principal(9)) == 1
    assert parity(parse_label("4:1")) == -1
    chi = parse_label("5:2")
    assert parity(chi) == 1 and order(chi) == 2


def test_order_is_least_power():
    for q in range(1, 80):
        for chi in enumerate_characters(q):
            k, pw = 1, chi
            while not pw.is_principal:
                pw = multiply(pw, chi)
                k += 1
            assert order(chi) == k


def test_conductor_examples():
    assert conductor(principal(30)) == 1
    chi9 = multiply(parse_label("3:1"), principal(9))
    assert chi9.modulus == 9 and conductor(chi9) == 3
    prim8 = [c for c in enumerate_characters(8) if conductor(c) == 8]
    assert len(prim8) == 2


def test_conductor_formula_matches_scan():
    for q in range(1, 301):
        for chi in enumerate_characters(q):
            assert conductor(chi) == conductor_by_scan(chi), chi.label


def test_conductor_scan_definition_bruteforce():
    # smallest f | q with chi(a) = chi(b) whenever a = b mod f and gcd(ab, q) = 1
    for q in range(1, 61):
        for chi in enumerate_characters(q):
            rot = chi.rotation_table()
            for f in range(1, q + 1):
                if q % f:
                    continue
                if all(
                    rot[a] == rot[b]
                    for a in range(q)
                    for b in range(a % f, q, f)
                    if rot[a] >= 0 and rot[b] >= 0
                ):
                    break
            assert conductor(chi) == f


def test_induce_primitive_examples_and_properties():
    chi = parse_label("7:1")
    assert induce_primitive(chi) == chi
    chi9 = multiply(parse_label("3:1"), principal(9))
    psi = induce_primitive(chi9)
    assert psi == parse_label("3:1")
    for n in (1, 2, 4, 5, 7, 8):
        assert evaluate(psi, n) == evaluate(chi9, n)
    assert induce_primitive(principal(12)) == trivial()
    for q in range(1, 120):
        for c in enumerate_characters(q):
            p = induce_primitive(c)
            assert is_primitive(p) and p.modulus == conductor(c)
            assert induce_primitive(p) == p
            for n in range(1, q):
                if math.gcd(n, q) == 1:
                    assert evaluate(p, n) == evaluate(c, n)


def test_enumeration_examples():
    assert len(enumerate_characters(5)) == 4
    assert [c.label for c in enumerate_primitive(4)] == ["1:", "3:1", "4:1"]
    assert len(primitive_characters(8)) == 2
    labels = [c.label for c in enumerate_characters(24)]
    assert len(labels) == len(set(labels)) == 8


def test_enumerate_primitive_parity_filter():
    odd = enumerate_primitive(12, -1)
    even = enumerate_primitive(12, 1)
    assert all(parity(c) == -1 for c in odd) and all(parity(c) == 1 for c in even)
    assert len(odd) + len(even) == len(enumerate_primitive(12))
    with pytest.raises(ValueError):
        enumerate_primitive(5, 0)


def test_primitive_counts_match_brute_force():
    for q in range(1, 200):
        brute = [c for c in enumerate_characters(q) if conductor_by_scan(c) == q]
        assert list(primitive_characters(q)) == brute


def test_large_modulus_uses_logs():
    q = 1000003 * 3
    chi = DirichletCharacter(unit_group(q), (1, 7))
    assert conductor(chi) == q
    a, b = 123456, 987654
    assert evaluate(chi, a * b) == evaluate(chi, a) * evaluate(chi, b)
