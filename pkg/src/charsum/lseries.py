"""L(s, chi) for real s > 1 by two independent routes, plus the quantities
built on it: the distance/L-value defect and the Euler-factor ratio between
an imprimitive character and its primitive inducer.

Route A multiplies Euler factors over p <= X, with X picked from an explicit
bound on the prime tail (pi(x) < 1.25506 x / log x).  Route B sums the
Dirichlet series to N, a multiple of q, and adds the first two terms of the
partial-summation tail; the remainder is bounded by s * B * N^(-s-1) where B
bounds the antiderivative of the centred periodic part of S(t).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from .characters import (
    DirichletCharacter,
    conjugate,
    induce_primitive,
    multiply,
    root_table,
)
from .charsums import prefix_profile
from .metric import distance_sq
from .numtheory import euler_phi, factorize, primes_up_to

__all__ = [
    "LValue",
    "NonConvergenceError",
    "EULER_PRODUCT",
    "SUMMATION",
    "s_of_y",
    "l_value",
    "euler_prime_cutoff",
    "lemma3_defect",
    "euler_ratio",
    "prime_divisor_recip_sum",
]

EULER_PRODUCT = "euler-product"
SUMMATION = "tail-bounded-summation"

MAX_EULER_CUTOFF = 10**8
MAX_SUMMATION_TERMS = 2 * 10**8
_ROSSER_SCHOENFELD = 1.25506
_POLE_GUARD = 1e-3


class NonConvergenceError(ArithmeticError):
    """The truncation point needed for the requested tolerance is out of reach."""


@dataclass(frozen=True)
class LValue:
    label: str
    s: float
    value: complex
    method: str
    tail_bound: float
    terms: int  # X for the Euler product, N for the summation


def s_of_y(y: float) -> float:
    """1 + 1/log y."""
    if y <= 1:
        raise ValueError("s_of_y needs y > 1")
    return 1.0 + 1.0 / math.log(y)


def _zeta_upper(s: float) -> float:
    return s / (s - 1.0)


def _prime_tail_bound(X: float, s: float) -> float:
    """Upper bound for sum_{p > X} p^-s / (1 - p^-s)."""
    lx = math.log(X)
    return _ROSSER_SCHOENFELD * s * math.exp((1.0 - s) * lx) / ((s - 1.0) * lx) / (1.0 - X ** (-s))


def _power_tail_bound(M: int, s: float) -> float:
    """Upper bound for sum_p sum_{m > M} p^(-ms) / m."""
    # sum_p p^-ms <= zeta(ms) - 1 <= 2^-ms (1 + 2/(ms - 1)); geometric in m
    tot = 0.0
    for m in range(M + 1, M + 200):
        t = 2.0 ** (-m * s) * (1.0 + 2.0 / (m * s - 1.0)) / m
        tot += t
        if t < 1e-30:
            break
    return tot


def euler_prime_cutoff(s: float, tol: float) -> int:
    """Smallest X (to within 1%) whose Euler-product truncation meets ``tol``."""
    target = math.log1p(0.5 * tol / _zeta_upper(s))
    lo, hi = 17.0, 17.0
    while _prime_tail_bound(hi, s) > target:
        lo, hi = hi, hi * 2.0
        if hi > 1e300:
            return math.inf
    while hi / lo > 1.01:
        mid = math.sqrt(lo * hi)
        if _prime_tail_bound(mid, s) > target:
            lo = mid
        else:
            hi = mid
    return int(math.ceil(hi))


_POWER_DROP = 1e-20  # per-m budget for the higher prime powers left out


def _power_prime_limit(m: int, s: float, X: int) -> int:
    """P with sum_{n > P} n^(-ms) <= P^(1-ms)/(ms-1) <= _POWER_DROP, capped at X."""
    e = m * s - 1.0
    P = (1.0 / (_POWER_DROP * e)) ** (1.0 / e)
    return int(min(X, math.ceil(P) + 1))


@lru_cache(maxsize=32)
def _prime_power_sums(q: int, s: float, X: int, M: int) -> Tuple[np.ndarray, float]:
    """W[m-1, a] = sum_{p <= P_m, p = a mod q} p^(-m s), m = 1..M, with
    P_1 = X; also a bound on what the truncations P_m < X leave out."""
    primes = primes_up_to(X)
    out = np.zeros((M, q))
    dropped = 0.0
    for m in range(1, M + 1):
        P = X if m == 1 else _power_prime_limit(m, s, X)
        k = int(np.searchsorted(primes, P, side="right"))
        pr = primes[:k]
        out[m - 1] = np.bincount(pr % q, weights=np.power(pr.astype(np.float64), -m * s), minlength=q)
        if P < X:
            dropped += _POWER_DROP / m
    out.setflags(write=False)
    return out, dropped


def _euler_product(chi: DirichletCharacter, s: float, tol: float, max_cutoff: int) -> LValue:
    X = euler_prime_cutoff(s, tol)
    if X > max_cutoff:
        raise NonConvergenceError(
            f"Euler product at s={s} to tol={tol:.3g} needs primes up to {X:.3g} (cap {max_cutoff:.3g})"
        )
    q = chi.modulus
    M = max(2, int(math.ceil(60.0 / s)) + 1)
    W, dropped = _prime_power_sums(q, float(s), X, M)
    E = chi.structure.exponent
    rot = chi.rotation_table()
    units = rot >= 0
    roots = root_table(E)
    re, im = [], []
    for m in range(1, M + 1):
        z = roots[(m * rot[units]) % E] * W[m - 1][units] / m
        re.extend(z.real.tolist())
        im.extend(z.imag.tolist())
    log_l = complex(math.fsum(re), math.fsum(im))
    tail = _prime_tail_bound(X, s) + _power_tail_bound(M, s) + dropped
    value = cmath.exp(log_l)
    bound = _zeta_upper(s) * math.expm1(tail)
    return LValue(chi.label, float(s), value, EULER_PRODUCT, bound, X)


@lru_cache(maxsize=64)
def _residue_power_sums(q: int, s: float, N: int) -> np.ndarray:
    """h[a] = sum_{n <= N, n = a mod q} n^-s for a = 0..q-1 (N a multiple of q)."""
    J = N // q
    out = np.zeros(q)
    rows = max(1, (1 << 22) // q)
    parts = []
    for j0 in range(0, J, rows):
        j1 = min(J, j0 + rows)
        n = np.arange(j0 * q + 1, j1 * q + 1, dtype=np.float64).reshape(j1 - j0, q)
        parts.append(np.power(n, -s).T.sum(axis=1))
    cols = np.array(parts).T  # (q, chunks), column index a-1 for n = a mod q
    tot = np.array([math.fsum(row) for row in cols.tolist()])
    out[1:] = tot[:-1]
    out[0] = tot[-1]
    out.setflags(write=False)
    return out


def _periodic_tail_data(chi: DirichletCharacter) -> Tuple[float, complex, float]:
    """(c, mu, B): S(t) = c t + P(t) with P q-periodic of mean mu, and
    B = max |int_0^t (P - mu)| over a period."""
    q = chi.modulus
    prof = prefix_profile(chi, store=True)
    S = np.concatenate([[0j], np.asarray(prof.prefix[:-1])])  # S(0..q-1)
    c = euler_phi(q) / q if chi.is_principal else 0.0
    mu = complex(S.sum()) / q - c * q / 2.0
    x = np.arange(q, dtype=np.float64)
    steps = S - mu - c * (x + 0.5)
    R = np.concatenate([[0j], np.cumsum(steps)])
    B = float(np.abs(R).max())
    if c:
        tau = (S.real - mu.real) / c - x
        inside = (tau > 0) & (tau < 1)
        if inside.any():
            t = tau[inside]
            Ri = R[:-1][inside].real + (S.real[inside] - mu.real) * t - c * (x[inside] * t + t * t / 2)
            B = max(B, float(np.abs(Ri).max()))
    return c, mu, B


def _summation(chi, s, tol, refine, max_terms) -> LValue:
    q = chi.modulus
    if refine:
        c, mu, B = _periodic_tail_data(chi)
        B *= 1.0 + 1e-9
        need = (2.0 * s * B / tol) ** (1.0 / (s + 1.0)) if B > 0 else 1.0
    else:
        if chi.is_principal:
            raise ValueError("first-order tail bound needs a non-principal character")
        m = prefix_profile(chi).max_abs
        need = (4.0 * m / tol) ** (1.0 / s) if m > 0 else 1.0
    if need > max_terms:
        raise NonConvergenceError(f"summation at s={s} to tol={tol} needs {need:.3g} terms")
    # N = q * 2^k keeps the residue sums cacheable across characters of one modulus
    J = 1
    while J * q < need:
        J *= 2
    N = J * q
    h = _residue_power_sums(q, float(s), N)
    vals = chi.values()
    partial = complex(math.fsum((vals.real * h).tolist()), math.fsum((vals.imag * h).tolist()))
    if refine:
        value = partial + c * N ** (1.0 - s) / (s - 1.0) + mu * N ** (-s)
        bound = s * B * N ** (-s - 1.0)
    else:
        value = partial
        bound = 2.0 * m * N ** (-s)
    return LValue(chi.label, float(s), value, SUMMATION, bound, N)


def l_value(
    chi: DirichletCharacter,
    s: float,
    tol: float = 1e-8,
    method: str = SUMMATION,
    refine: bool = True,
    max_terms: Optional[int] = None,
) -> LValue:
    """L(s, chi) for real s > 1 with |error| <= tol.

    ``refine=False`` uses the plain tail bound 2 max|S| N^-s for the summation
    route (non-principal characters only).
    """
    if not s > 1:
        raise ValueError("l_value needs s > 1")
    if tol < 1e-12:
        raise ValueError("tol below 1e-12 is not supported in double precision")
    if chi.is_principal and s - 1 < _POLE_GUARD:
        raise ValueError("s too close to the pole for a principal character")
    if method == EULER_PRODUCT:
        return _euler_product(chi, s, tol, max_terms or MAX_EULER_CUTOFF)
    if method == SUMMATION:
        return _summation(chi, s, tol, refine, max_terms or MAX_SUMMATION_TERMS)
    raise ValueError(f"unknown method {method!r}")


def lemma3_defect(chi: DirichletCharacter, y: float, tol: float = 1e-9) -> float:
    """D(chi, 1; y)^2 - log |log y / L(s_y, chi)|."""
    if y < 2:
        raise ValueError("lemma3_defect needs y >= 2")
    if chi.is_principal:
        raise ValueError("lemma3_defect needs a non-principal character")
    from .characters import trivial

    L = l_value(chi, s_of_y(y), tol=tol).value
    return distance_sq(chi, trivial(), y) - math.log(math.log(y) / abs(L))


def euler_ratio_factors(chi: DirichletCharacter, xi: DirichletCharacter):
    """(psi, primes) where psi induces chi * conj(xi) and primes are the
    p | lcm(q, m) with p not dividing the conductor of psi."""
    psi = induce_primitive(multiply(chi, conjugate(xi)))
    L = math.lcm(chi.modulus, xi.modulus)
    Q = psi.modulus
    return psi, [p for p, _ in factorize(L) if Q % p]


def euler_ratio(chi: DirichletCharacter, xi: DirichletCharacter, s: float) -> complex:
    """prod (1 - psi(p) p^-s) over p | lcm(q, m), p not dividing Q."""
    psi, primes = euler_ratio_factors(chi, xi)
    out = 1 + 0j
    for p in primes:
        out *= 1 - psi(p) * p ** (-s)
    return out


def prime_divisor_recip_sum(m: int) -> float:
    """sum of 1/p over the primes dividing m."""
    return math.fsum(1.0 / p for p, _ in factorize(m))
