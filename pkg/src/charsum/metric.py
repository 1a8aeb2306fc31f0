"""The pretentious distance D(chi, psi; y) and nearest-character search."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .characters import DirichletCharacter, enumerate_primitive, parity, trivial
from .numtheory import primes_up_to

__all__ = [
    "DistanceReport",
    "EmptySearchSpace",
    "distance",
    "distance_sq",
    "prime_rotations",
    "nearest_character",
    "theoremA_conductor_cap",
    "default_max_cond",
]


class EmptySearchSpace(ValueError):
    """No candidate character satisfies the conductor and parity constraints."""


@dataclass(frozen=True)
class DistanceReport:
    chi_label: str
    psi_label: str
    y: float
    dist_sq: float
    dist: float


def prime_rotations(chi: DirichletCharacter, primes: np.ndarray, den: int) -> np.ndarray:
    """chi(p) as numerators over ``den`` (a multiple of the group exponent); -1 for zero."""
    E = chi.structure.exponent
    if den % E:
        raise ValueError("den must be a multiple of the group exponent")
    rot = chi.rotations_at(primes)
    return np.where(rot < 0, -1, rot * (den // E))


def _terms(chi, psi, primes):
    den = math.lcm(chi.structure.exponent, psi.structure.exponent)
    a = prime_rotations(chi, primes, den)
    b = prime_rotations(psi, primes, den)
    zero = (a < 0) | (b < 0)
    k = (a - b) % den
    k = np.minimum(k, den - k)  # cos is even; keeps D(chi, psi) == D(psi, chi) bit for bit
    one_minus_cos = 1.0 - np.cos(2.0 * np.pi * k / den)
    one_minus_cos[zero] = 1.0
    return one_minus_cos / primes


def distance_sq(chi: DirichletCharacter, psi: DirichletCharacter, y: float) -> float:
    """sum_{p <= y} (1 - Re chi(p) conj(psi(p))) / p."""
    if y < 0:
        raise ValueError("y must be nonnegative")
    primes = primes_up_to(y)
    if len(primes) == 0:
        return 0.0
    return math.fsum(_terms(chi, psi, primes).tolist())


def distance(chi: DirichletCharacter, psi: DirichletCharacter, y: float) -> DistanceReport:
    d2 = distance_sq(chi, psi, y)
    return DistanceReport(chi.label, psi.label, float(y), d2, math.sqrt(d2))


def theoremA_conductor_cap(q: float) -> float:
    """(log q)^(1/3), the conductor ceiling in the nearest-character search."""
    if q < 3:
        raise ValueError("conductor cap needs q >= 3")
    return math.log(q) ** (1.0 / 3.0)


def default_max_cond(q: float) -> int:
    """Largest integer strictly below the conductor cap (at least 1)."""
    cap = theoremA_conductor_cap(q)
    m = math.floor(cap)
    if m == cap:
        m -= 1
    return max(m, 1)


def nearest_character(
    chi: DirichletCharacter,
    max_cond: Optional[int] = None,
    opposite_parity_only: bool = False,
    y: Optional[float] = None,
) -> Tuple[DirichletCharacter, DistanceReport]:
    """Primitive xi of conductor <= max_cond minimizing D(chi, xi; y).

    Ties go to the smaller conductor, then the smaller exponent vector.
    Defaults: y = q and max_cond from :func:`default_max_cond`.
    """
    q = chi.modulus
    if y is None:
        y = q
    if max_cond is None:
        max_cond = default_max_cond(q) if q >= 3 else 1
    if max_cond < 1:
        raise ValueError("max_cond must be >= 1")
    want = -parity(chi) if opposite_parity_only else None
    candidates = enumerate_primitive(max_cond, want)
    if not candidates:
        raise EmptySearchSpace(
            f"no primitive character of conductor <= {max_cond}"
            + (f" with parity {want}" if want is not None else "")
        )
    primes = primes_up_to(y)
    best = None
    for xi in candidates:
        d2 = math.fsum(_terms(chi, xi, primes).tolist()) if len(primes) else 0.0
        key = (d2, xi.modulus, xi.exponents)
        if best is None or key < best[0]:
            best = (key, xi)
    (d2, _, _), xi = best
    return xi, DistanceReport(chi.label, xi.label, float(y), d2, math.sqrt(d2))


def distance_to_trivial(chi: DirichletCharacter, y: float) -> float:
    return distance_sq(chi, trivial(), y)
