"""Exact integer arithmetic: factorization, multiplicative statistics, prime sums."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

__all__ = [
    "Factorization",
    "ArithStats",
    "factorize",
    "arith_stats",
    "is_prime",
    "primes_up_to",
    "mertens_sum",
    "chebyshev_theta",
    "divisors",
    "radical",
    "largest_prime_factor",
    "euler_phi",
    "is_squarefree",
    "primorial",
]

TRIAL_LIMIT = 10**6
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)  # deterministic below 3.3e24
_MR_LIMIT = 3317044064679887385961981


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors!r}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors do not multiply to {self.value}")

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        """Return ord_p of the value (0 when p does not divide it)."""
        for prime, e in self.factors:
            if prime == p:
                return e
        return 0

    def __iter__(self):
        return iter(self.factors)


@dataclass(frozen=True)
class ArithStats:
    n: int
    phi: int
    num_divisors: int
    radical: int
    largest_prime_factor: int


@lru_cache(maxsize=1)
def _small_primes() -> Tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(TRIAL_LIMIT))


def _miller_rabin(n: int) -> bool:
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality test (trial division, then Miller-Rabin)."""
    n = int(n)
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n >= _MR_LIMIT:
        raise ValueError("deterministic primality only available below 3.3e24")
    return _miller_rabin(n)


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")


def _split(n: int, out: dict) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


@lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    """Prime-power decomposition of ``n >= 1``.

    Trial division by primes up to 10**6, then Miller-Rabin and Pollard rho on
    what remains. Values beyond 2**63 are accepted as long as the cofactor left
    by trial division is small enough for the deterministic primality test.
    """
    if isinstance(n, bool) or int(n) != n:
        raise TypeError("factorize expects an integer")
    n = int(n)
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    found: dict = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        _split(m, found)
    return Factorization(n, tuple(sorted(found.items())))


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def radical(n: int) -> int:
    return math.prod(factorize(n).primes)


def largest_prime_factor(n: int) -> int:
    """Largest prime factor, with the convention that it is 1 at n = 1."""
    f = factorize(n).factors
    return f[-1][0] if f else 1


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


def divisors(n: int) -> Tuple[int, ...]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def arith_stats(n: int) -> ArithStats:
    f = factorize(n)
    return ArithStats(
        n=f.value,
        phi=euler_phi(n),
        num_divisors=math.prod(e + 1 for _, e in f),
        radical=math.prod(f.primes),
        largest_prime_factor=largest_prime_factor(n),
    )


def primorial(k: int) -> int:
    """Product of the first k primes."""
    return math.prod(int(p) for p in _first_primes(k))


def _first_primes(k: int) -> np.ndarray:
    limit = 16
    while True:
        ps = primes_up_to(limit)
        if len(ps) >= k:
            return ps[:k]
        limit *= 2


# -- sieve ---------------------------------------------------------------------

_SEGMENT = 1 << 20
_sieve_cache = {"limit": 1, "primes": np.zeros(0, dtype=np.int64)}


def _simple_sieve(n: int) -> np.ndarray:
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if is_p[i]:
            is_p[i * i :: i] = False
    return np.flatnonzero(is_p).astype(np.int64)


def _segmented_sieve(n: int) -> np.ndarray:
    base = _simple_sieve(math.isqrt(n) + 1)
    odd_base = base[1:]
    chunks = [np.array([2], dtype=np.int64)] if n >= 2 else []
    # segments cover odd numbers only; index i stands for lo + 2 i
    lo = 3
    while lo <= n:
        hi = min(lo + 2 * _SEGMENT, n + 1)
        size = (hi - lo + 1) // 2
        seg = np.ones(size, dtype=bool)
        for p in odd_base:
            p = int(p)
            if p * p >= hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            seg[(start - lo) // 2 :: p] = False
        chunks.append(lo + 2 * np.flatnonzero(seg).astype(np.int64))
        lo = lo + 2 * size
    out = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)
    return out[out <= n]


def primes_up_to(n) -> np.ndarray:
    """All primes ``p <= n`` as an int64 array (cached, read-only)."""
    n = int(math.floor(n))
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    cache = _sieve_cache
    if n > cache["limit"]:
        limit = max(n, 2 * cache["limit"])
        primes = _segmented_sieve(limit) if limit > 1 << 16 else _simple_sieve(limit)
        primes.setflags(write=False)
        cache["primes"], cache["limit"] = primes, limit
    primes = cache["primes"]
    return primes[: np.searchsorted(primes, n, side="right")]


def mertens_sum(y: float) -> float:
    """Sum of 1/p over primes p <= y."""
    if y < 2:
        return 0.0
    ps = primes_up_to(y)
    return math.fsum((1.0 / ps[::-1]).tolist())


def chebyshev_theta(x: float) -> float:
    """Sum of log p over primes p <= x."""
    if x < 2:
        return 0.0
    return math.fsum(np.log(primes_up_to(x).astype(np.float64)).tolist())
