import json
import math

import pytest

from charsum import bounds as B
from charsum.characters import conjugate, induce_primitive, multiply, parity, parse_label, principal, trivial
from charsum.charsums import prefix_profile
from charsum.lseries import euler_ratio, l_value, s_of_y
from charsum.metric import EmptySearchSpace, distance_sq, nearest_character
from charsum.numtheory import arith_stats
from charsum.report import build_bound_report, lemma4_q_prime, report_to_dict, report_to_json


def test_quadratic_mod_5():
    r = build_bound_report(parse_label("5:2"))
    assert r.max_cond == 1 and r.conductor_cap == pytest.approx(math.log(5) ** (1 / 3))
    assert r.xi_label == "1:" and r.m == 1
    assert r.psi_label == "5:2" and r.Q == 5
    assert r.max_abs == 1 and r.argmax == 1
    assert r.theorem1.value is None and not r.theorem1.applicable  # q < 16
    assert r.xi_opposite_label is None  # no odd character of conductor 1
    assert r.dist_sq == pytest.approx(distance_sq(parse_label("5:2"), trivial(), 5), abs=0)


def test_large_prime_recomputed_field_by_field():
    chi = parse_label("1000003:2")
    q = chi.modulus
    r = build_bound_report(chi)
    xi, dist = nearest_character(chi, 2, False, q)
    assert r.max_cond == 2 and r.xi_label == xi.label and r.dist_sq == dist.dist_sq
    psi = induce_primitive(multiply(chi, conjugate(xi)))
    assert r.psi_label == psi.label and r.Q == psi.modulus
    s = s_of_y(q)
    assert r.s == s
    Lpsi = l_value(psi, s).value
    assert r.L_psi_abs == pytest.approx(abs(Lpsi), abs=2e-8)
    Lcx = abs(Lpsi * euler_ratio(chi, xi, s))
    assert r.L_chi_xi_abs == pytest.approx(Lcx, abs=2e-8)
    prof = prefix_profile(chi)
    assert r.max_abs == prof.max_abs and r.argmax == prof.argmax
    st = arith_stats(q)
    assert r.theorem1.value == B.theorem1_bound(q, st.largest_prime_factor, st.num_divisors)
    assert r.theorem1.applicable  # prime, so squarefree
    assert r.theorem1.ratio == pytest.approx(prof.max_abs / r.theorem1.value)
    assert r.corollary.value == B.corollary_bound(q, st.largest_prime_factor)
    t2 = B.theorem2_bound(q)
    assert r.theorem2.value == t2.value and r.theorem2.applicable == t2.applicable is False
    par = parity(chi) * parity(xi)
    assert r.parity_product == par
    assert r.theoremA_upper.value == B.theoremAB_bounds(q, xi.modulus, par, dist.dist_sq).upper_A
    assert r.prop22.value == pytest.approx(B.prop22_bound(q, Lcx), rel=1e-12)
    if parity(chi) == 1:
        # conductor <= 2 has only the even trivial character
        with pytest.raises(EmptySearchSpace):
            nearest_character(chi, 2, True, q)
        assert r.xi_opposite_label is None and r.theoremB_lower.value is None
    else:
        xo, do = nearest_character(chi, 2, True, q)
        assert r.xi_opposite_label == xo.label and r.dist_sq_opposite == do.dist_sq
        lb = B.theoremAB_bounds(q, xo.modulus, -1, do.dist_sq).lower_B
        assert r.theoremB_lower.value == lb and r.theoremB_lower.applicable == (lb > 0)
    if r.Q >= 16:
        Qs = arith_stats(r.Q)
        want = B.lemma4_bound(r.Q, lemma4_q_prime(r.Q), Qs.largest_prime_factor, Qs.num_divisors)
        assert r.lemma4.value == want
    assert r.pv_ratio == pytest.approx(prof.max_abs / (math.sqrt(q) * math.log(q)), rel=1e-15)


def test_rejects_principal_and_imprimitive():
    with pytest.raises(ValueError):
        build_bound_report(principal(7))
    with pytest.raises(ValueError):
        build_bound_report(multiply(parse_label("3:1"), principal(9)))


def test_lemma4_q_prime():
    assert lemma4_q_prime(30) == 1
    assert lemma4_q_prime(2**3 * 3 * 5**2 * 7) == 2**3 * 3 * 5**2
    assert lemma4_q_prime(9 * 11) == 9


def test_json_is_deterministic_and_finite():
    chi = parse_label("97:5")
    a = report_to_json(build_bound_report(chi))
    b = report_to_json(build_bound_report(chi))
    assert a == b
    d = json.loads(a)
    assert list(d)[:3] == ["label", "q", "conductor_cap"]
    assert d == report_to_dict(build_bound_report(chi))
