import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from charsum.numtheory import (
    Factorization,
    arith_stats,
    chebyshev_theta,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    is_squarefree,
    largest_prime_factor,
    mertens_sum,
    primes_up_to,
    primorial,
    radical,
)


def test_factorize_examples():
    assert factorize(12).factors == ((2, 2), (3, 1))
    assert factorize(1).factors == ()
    assert factorize(1000003).factors == ((1000003, 1),)


def test_factorize_rejects_nonpositive():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(-5)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=2**63 - 1))
def test_factorize_matches_sympy(n):
    f = factorize(n)
    assert dict(f.factors) == sympy.factorint(n)
    assert math.prod(p**e for p, e in f.factors) == n
    ps = [p for p, _ in f.factors]
    assert ps == sorted(set(ps))
    assert all(sympy.isprime(p) for p in ps)


def test_factorize_hard_semiprimes():
    # two primes just above the trial-division range
    p, q = 1000003, 2147483647
    assert factorize(p * q).factors == ((p, 1), (q, 1))
    n = 4611686014132420609  # (2^31 - 1)^2
    assert factorize(n).factors == ((2147483647, 2),)


def test_factorization_type_validates():
    with pytest.raises(ValueError):
        Factorization(12, ((2, 1), (3, 1)))
    f = factorize(360)
    assert f.exponent(2) == 3 and f.exponent(7) == 0
    assert f.primes == (2, 3, 5)


def test_arith_stats_examples():
    s = arith_stats(12)
    assert (s.phi, s.num_divisors, s.radical, s.largest_prime_factor) == (4, 6, 6, 3)
    s = arith_stats(1)
    assert (s.phi, s.num_divisors, s.radical, s.largest_prime_factor) == (1, 1, 1, 1)
    s = arith_stats(360)
    assert (s.phi, s.num_divisors, s.radical, s.largest_prime_factor) == (96, 24, 30, 5)


def test_phi_and_divisor_count_brute_force_to_1e5():
    N = 10**5
    phi = np.arange(N + 1, dtype=np.int64)
    for p in primes_up_to(N):
        phi[p::p] -= phi[p::p] // p
    d = np.zeros(N + 1, dtype=np.int64)
    for k in range(1, N + 1):
        d[k::k] += 1
    for n in range(1, N + 1):
        s = arith_stats(n)
        assert s.phi == phi[n] and s.num_divisors == d[n], n


def test_phi_gcd_count_small():
    for n in range(1, 400):
        assert euler_phi(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=10**12))
def test_arith_stats_invariants(n):
    s = arith_stats(n)
    assert n % s.radical == 0
    assert is_squarefree(s.radical)
    if n > 1:
        assert s.radical % s.largest_prime_factor == 0
    assert s.phi <= n and s.num_divisors >= 1
    assert s.radical == radical(n) and s.largest_prime_factor == largest_prime_factor(n)
    assert s.phi == int(sympy.totient(n)) and s.num_divisors == int(sympy.divisor_count(n))


def test_divisors_sorted_and_complete():
    assert list(divisors(360)) == [d for d in range(1, 361) if 360 % d == 0]
    assert tuple(divisors(1)) == (1,)


def test_is_prime_agrees_with_sympy():
    for n in list(range(0, 2000)) + [2**61 - 1, 2**62 + 1, 10**18 + 9, 3215031751]:
        assert is_prime(n) == sympy.isprime(n), n


def test_primes_up_to_matches_sympy():
    for n in (0, 1, 2, 3, 10, 97, 1000, 123457):
        assert primes_up_to(n).tolist() == list(sympy.primerange(2, n + 1))
    # growing the cache after a small call stays consistent
    assert len(primes_up_to(2 * 10**6)) == 148933


def test_mertens_examples():
    assert mertens_sum(1) == 0.0
    assert mertens_sum(2) == 0.5
    assert mertens_sum(10) == pytest.approx(1.1761904761904762, abs=1e-15)


def test_mertens_near_loglog():
    for y in np.logspace(2, 8, 13):
        assert -0.5 <= mertens_sum(y) - math.log(math.log(y)) <= 0.5


def test_theta_examples_and_range():
    assert chebyshev_theta(1) == 0.0
    assert chebyshev_theta(2) == pytest.approx(math.log(2))
    assert chebyshev_theta(10) == pytest.approx(math.log(210), abs=1e-12)
    for x in np.logspace(3, 7, 9):
        assert 0.8 <= chebyshev_theta(x) / x <= 1.2


def test_primorial():
    assert primorial(1) == 2
    assert primorial(5) == 2310


def test_divisor_bound_nicolas_robin_form():
    # log d(n) <= 1.5379 log 2 log n / loglog n for n >= 3
    N = 10**6
    d = np.zeros(N + 1, dtype=np.int64)
    for k in range(1, N + 1):
        d[k::k] += 1
    n = np.arange(3, N + 1)
    assert np.all(np.log(d[3:]) <= 1.5379 * math.log(2) * np.log(n) / np.log(np.log(n)))


def test_divisor_bound_as_stated():
    """log d(q) < log q / log log q on [3, 10^6], checked literally.

    The inequality holds only up to a constant factor; it fails first at
    q = 2520 and worst at q = 720720 (d = 240)."""
    N = 10**6
    d = np.zeros(N + 1, dtype=np.int64)
    for k in range(1, N + 1):
        d[k::k] += 1
    n = np.arange(3, N + 1)
    bad = n[np.log(d[3:]) >= np.log(n) / np.log(np.log(n))]
    assert bad.size == 0, f"{bad.size} violations, first {bad[:5].tolist()}"
