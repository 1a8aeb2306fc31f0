"""Bound calculators for character sums and L-values near s = 1.

Implicit absolute constants are taken to be 1 throughout; what these numbers
are good for is ratios (empirical / bound) across families of moduli.
Quantities that overflow a double are carried as natural logarithms, with
exponents kept as exact fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional

from .numtheory import arith_stats, radical

__all__ = [
    "C1",
    "C2",
    "C3",
    "C4",
    "ShortSumBound",
    "IwaniecParams",
    "gr_exponents",
    "gr_short_sum_bound",
    "choose_k",
    "choose_k_log",
    "threshold_T",
    "lemma4_bound",
    "iwaniec_params",
    "iwaniec_range_check",
    "iwaniec_short_sum_bound",
    "lemma5_bound",
    "theorem1_bound",
    "corollary_bound",
    "theorem2_bound",
    "theoremAB_bounds",
    "prop22_bound",
    "gcd_sqrt_sum",
    "gcd_weighted_sum",
    "delta_g",
]

# Iwaniec's explicit constants
C1 = 400
C2 = 2400
C3 = 4 * 1800**2
C4 = 7200

THEOREM2_EPS = 0.01
LEMMA5_EPS = 0.01


def _log(x) -> float:
    if x <= 0:
        raise ValueError("logarithm of a nonpositive number")
    return math.log(x)


@dataclass(frozen=True)
class ShortSumBound:
    """A bound kept as its logarithm, with the exponent of each input."""

    log_value: float
    exponents: Dict[str, Fraction]

    @property
    def value(self) -> float:
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf


def gr_exponents(k: int) -> Dict[str, Fraction]:
    """Exponents of N, P, Q, q', d and log Q in the smooth-modulus short-sum bound."""
    if k < 0 or int(k) != k:
        raise ValueError("k must be a nonnegative integer")
    if k > 60:
        raise ValueError("k > 60 not supported")
    K = 2**k
    return {
        "N": 1 - Fraction(k + 3, 8 * K - 2),
        "P": Fraction(k * k + 3 * k + 4, 32 * K - 8),
        "Q": Fraction(1, 8 * K - 2),
        "q_prime": Fraction(k + 1, 4 * K - 1),
        "d": Fraction(3 * k * k + 11 * k + 8, 16 * K - 4),
        "log_Q": Fraction(k + 3, 8 * K - 2),
    }


def gr_short_sum_bound(N, Q, P, q_prime, d, k: int) -> ShortSumBound:
    """log of N^a P^b Q^c q'^e d^f (log Q)^g with the exponents above."""
    if min(N, Q, P, q_prime, d) < 1:
        raise ValueError("magnitudes must be >= 1")
    if Q < 3:
        raise ValueError("Q must be >= 3")
    ex = gr_exponents(k)
    logs = {
        "N": _log(N),
        "P": _log(P),
        "Q": _log(Q),
        "q_prime": _log(q_prime),
        "d": _log(d),
        "log_Q": _log(_log(Q)),
    }
    return ShortSumBound(math.fsum(float(ex[n]) * logs[n] for n in ex), ex)


def choose_k_log(log_Q: float, log_P: float, log_d: float) -> int:
    """k = floor(k') + 1 with k' = min(loglog Q / 10, sqrt(log Q / (log P + log d)))."""
    if log_Q <= 1:
        raise ValueError("choose_k needs log log Q > 0")
    a = math.log(log_Q) / 10.0
    denom = log_P + log_d
    b = math.sqrt(log_Q / denom) if denom > 0 else math.inf
    return int(math.floor(min(a, b))) + 1


def choose_k(Q, P, d) -> int:
    if Q < 16:
        raise ValueError("choose_k needs Q >= 16")
    return choose_k_log(_log(Q), _log(P), _log(d))


def threshold_T(Q, P, q_prime, d, k: int) -> ShortSumBound:
    """log T, T = P^(3k) Q^(1/k) q'^2 d^(3k) (log Q)^(16 K / k), K = 2^k."""
    if k < 1 or int(k) != k:
        raise ValueError("k must be a positive integer")
    K = 2**k
    ex = {
        "P": Fraction(3 * k),
        "Q": Fraction(1, k),
        "q_prime": Fraction(2),
        "d": Fraction(3 * k),
        "log_Q": Fraction(16 * K, k),
    }
    lQ = _log(Q)
    logs = {"P": _log(P), "Q": lQ, "q_prime": _log(q_prime), "d": _log(d), "log_Q": _log(lQ)}
    return ShortSumBound(math.fsum(float(ex[n]) * logs[n] for n in ex), ex)


def is_T_le_Q(log_T: float, Q) -> bool:
    return log_T <= _log(Q)


def lemma4_bound(Q, q_prime, P, d) -> float:
    """log q' + log Q / log log Q + sqrt(log Q (log P + log d))."""
    if Q < 16:
        raise ValueError("lemma4_bound needs Q >= 16")
    lQ = _log(Q)
    return _log(q_prime) + lQ / math.log(lQ) + math.sqrt(lQ * (_log(P) + _log(d)))


@dataclass(frozen=True)
class IwaniecParams:
    Q: int
    x: float
    z: float
    gamma_log: float
    epsilon: float
    C1: int = C1
    C2: int = C2
    C3: int = C3
    C4: int = C4


def iwaniec_params(Q, x) -> IwaniecParams:
    """z = log 3Q / log x, log gamma = C1 z (log C2 z)^2, eps = 1 / (C3 z^2 log C4 z)."""
    if not x > 1:
        raise ValueError("x must exceed 1")
    if Q < 1:
        raise ValueError("Q must be positive")
    z = _log(3 * Q) / _log(x)
    gamma_log = C1 * z * math.log(C2 * z) ** 2
    eps = 1.0 / (C3 * z * z * math.log(C4 * z))
    return IwaniecParams(Q, x, z, gamma_log, eps)


def iwaniec_range_check(Q: int, N: int, N_prime: int) -> bool:
    """(rad Q)^100 < N < 9 Q^2 and N < N' < 2N, compared exactly."""
    Q, N, N_prime = int(Q), int(N), int(N_prime)
    return radical(Q) ** 100 < N < 9 * Q * Q and N < N_prime < 2 * N


def iwaniec_short_sum_bound(Q, N) -> float:
    """log of gamma_N N^(1 - eps_N)."""
    p = iwaniec_params(Q, N)
    return p.gamma_log + (1.0 - p.epsilon) * _log(N)


@dataclass(frozen=True)
class FlaggedBound:
    value: float
    applicable: bool
    log_value: Optional[float] = None


def lemma5_bound(Q, eps: float = LEMMA5_EPS) -> FlaggedBound:
    """(log Q)^(3/4 + eps); applicable when rad Q <= exp(2 (log Q)^(3/4))."""
    if Q < 3:
        raise ValueError("lemma5_bound needs Q >= 3")
    if not 0 < eps <= 0.25:
        raise ValueError("eps must lie in (0, 1/4]")
    lQ = _log(Q)
    ok = _log(radical(int(Q))) <= 2.0 * lQ**0.75
    v = lQ ** (0.75 + eps)
    return FlaggedBound(v, ok, math.log(v))


def _sqrt(x) -> float:
    # big ints beyond double range go through the log
    try:
        return math.sqrt(x)
    except OverflowError:
        return math.exp(0.5 * _log(x))


def _lll(q) -> tuple:
    lq = _log(q)
    llq = math.log(lq)
    return lq, llq, math.log(llq)


def theorem1_bound(q, P, d) -> float:
    """sqrt(q) log q [ (lll q / ll q)^(1/2) + ((lll q)^2 log(P d) / log q)^(1/4) ]."""
    if q < 16:
        raise ValueError("theorem1_bound needs q >= 16")
    lq, llq, lllq = _lll(q)
    bracket = math.sqrt(lllq / llq) + (lllq**2 * _log(P * d) / lq) ** 0.25
    return _sqrt(q) * lq * bracket


def corollary_bound(q, P) -> float:
    """sqrt(q) log q [ (lll q)^2 / ll q + (lll q)^2 log P / log q ]^(1/4)."""
    if q < 16:
        raise ValueError("corollary_bound needs q >= 16")
    lq, llq, lllq = _lll(q)
    return _sqrt(q) * lq * (lllq**2 / llq + lllq**2 * _log(P) / lq) ** 0.25


def theorem2_bound(q, eps: float = THEOREM2_EPS) -> FlaggedBound:
    """sqrt(q) (log q)^(7/8 + eps); applicable iff rad q <= exp((log q)^(3/4))."""
    if q < 3:
        raise ValueError("theorem2_bound needs q >= 3")
    if not 0 < eps <= 0.125:
        raise ValueError("eps must lie in (0, 1/8]")
    lq = _log(q)
    ok = _log(radical(int(q))) <= lq**0.75
    log_v = 0.5 * lq + (0.875 + eps) * math.log(lq)
    try:
        v = math.exp(log_v)
    except OverflowError:
        v = math.inf
    return FlaggedBound(v, ok, log_v)


@dataclass(frozen=True)
class TheoremABBounds:
    upper_A: float
    lower_B: float

    @property
    def lower_vacuous(self) -> bool:
        return self.lower_B <= 0


def theoremAB_bounds(q, m: int, parity_product: int, dist_sq: float) -> TheoremABBounds:
    """Upper bound of the distance theorem and the matching lower bound."""
    if q < 3 or m < 1 or dist_sq < 0:
        raise ValueError("need q >= 3, m >= 1, dist_sq >= 0")
    if parity_product not in (1, -1):
        raise ValueError("parity_product must be +1 or -1")
    lq = _log(q)
    rq = _sqrt(q)
    w = math.sqrt(m) / arith_stats(m).phi
    upper = (1 - parity_product) * w * rq * lq * math.exp(-dist_sq / 2) + rq * lq ** (6 / 7)
    lower = w * rq * lq * math.exp(-dist_sq) - w * rq * math.log(lq)
    return TheoremABBounds(upper, lower)


def prop22_bound(q, L_abs: float) -> float:
    """sqrt(q) sqrt(log q * |L|) + sqrt(q) (log q)^(6/7)."""
    if q < 3:
        raise ValueError("prop22_bound needs q >= 3")
    if L_abs < 0:
        raise ValueError("L_abs must be nonnegative")
    lq = _log(q)
    return _sqrt(q) * math.sqrt(lq * L_abs) + _sqrt(q) * lq ** (6 / 7)


def gcd_sqrt_sum(q: int, H: int) -> float:
    """sum_{h <= H} gcd(q, h)^(1/2)."""
    if q < 1 or H < 0:
        raise ValueError("need q >= 1 and H >= 0")
    return math.fsum(math.sqrt(math.gcd(q, h)) for h in range(1, int(H) + 1))


def gcd_weighted_sum(q: int, qbar: int, x: float) -> float:
    """sum_{0 < |s| <= x} gcd(q, |s qbar|) / |s|."""
    if math.gcd(q, qbar) != 1:
        raise ValueError("qbar must be coprime to q")
    if x < 1:
        raise ValueError("x must be >= 1")
    terms = [math.gcd(q, abs(s * qbar)) / s for s in range(1, int(math.floor(x)) + 1)]
    return 2.0 * math.fsum(terms)


def delta_g(g: int) -> float:
    """1 - (g / pi) sin(pi / g)."""
    if g < 1:
        raise ValueError("g must be >= 1")
    if g == 1:
        return 1.0
    t = math.pi / g
    # 1 - sin(t)/t, series near 0 avoids cancellation
    if t < 1e-3:
        t2 = t * t
        return t2 / 6 - t2 * t2 / 120 + t2**3 / 5040
    return 1.0 - math.sin(t) / t
