"""Character-sum profiles S(x) = sum_{n <= x} chi(n), interval sums and
Polya-Vinogradov ratios."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .characters import DirichletCharacter, root_table

__all__ = [
    "CharSumProfile",
    "prefix_profile",
    "interval_sum",
    "pv_ratio",
    "profile_csv",
    "STREAMING_THRESHOLD",
]

STREAMING_THRESHOLD = 10**7
_BLOCK = 1 << 14
_ARGMAX_SLACK = 1e-9


def _blocked_cumsum(v: np.ndarray) -> np.ndarray:
    """Prefix sums computed blockwise, keeping the rounding error near
    (block + n/block) ulps instead of n."""
    n = len(v)
    if n <= _BLOCK:
        return np.cumsum(v)
    pad = (-n) % _BLOCK
    blocks = np.concatenate([v, np.zeros(pad, dtype=v.dtype)]).reshape(-1, _BLOCK)
    local = np.cumsum(blocks, axis=1)
    offsets = np.concatenate([[0], np.cumsum(local[:, -1])[:-1]])
    return (local + offsets[:, None]).ravel()[:n]


@dataclass(frozen=True, eq=False)
class CharSumProfile:
    label: str
    modulus: int
    prefix: Optional[np.ndarray]  # S(1), ..., S(q); None in streaming mode
    max_abs: float
    argmax: int

    def S(self, x: int) -> complex:
        """S(x) for any integer x >= 0 (needs the stored prefix)."""
        if self.prefix is None:
            raise ValueError("profile was built in streaming mode")
        q = self.modulus
        k, r = divmod(int(x), q)
        total = complex(self.prefix[-1])
        return k * total + (complex(self.prefix[r - 1]) if r else 0j)

    def mean(self) -> complex:
        """Average of the step function S(t) over one period [0, q)."""
        return complex(self.prefix[:-1].sum()) / self.modulus


def _max_and_argmax(absvals: np.ndarray, offset: int = 1):
    m = float(absvals.max())
    idx = int(np.argmax(absvals >= m - _ARGMAX_SLACK))
    return m, idx + offset


def prefix_profile(chi: DirichletCharacter, store: Optional[bool] = None) -> CharSumProfile:
    """Compute S(1..q); above STREAMING_THRESHOLD only the maximum is kept."""
    q = chi.modulus
    if store is None:
        store = q <= STREAMING_THRESHOLD
    if store:
        vals = chi.values()
        vals = np.concatenate([vals[1:], vals[:1]])  # chi(1), ..., chi(q)
        prefix = _blocked_cumsum(vals)
        prefix.setflags(write=False)
        m, arg = _max_and_argmax(np.abs(prefix))
        return CharSumProfile(chi.label, q, prefix, m, arg)
    return _streaming_profile(chi)


def _streaming_profile(chi: DirichletCharacter, chunk: int = 1 << 20) -> CharSumProfile:
    q = chi.modulus
    roots = root_table(chi.structure.exponent)
    running = 0j
    best, arg = -1.0, 1
    for lo in range(1, q + 1, chunk):
        ns = np.arange(lo, min(lo + chunk, q + 1), dtype=np.int64)
        rot = chi.rotations_at(ns)
        v = roots[np.where(rot < 0, 0, rot)]
        v[rot < 0] = 0
        s = _blocked_cumsum(v) + running
        running = complex(s[-1])
        m, a = _max_and_argmax(np.abs(s), offset=lo)
        if m > best + _ARGMAX_SLACK:
            best, arg = m, a
    return CharSumProfile(chi.label, q, None, best, arg)


def interval_sum(chi: DirichletCharacter, M: int, N: int, profile: Optional[CharSumProfile] = None) -> complex:
    """sum_{M < n <= M + N} chi(n), reduced by periodicity."""
    if M < 0 or N < 0:
        raise ValueError("interval_sum needs M >= 0 and N >= 0")
    prof = profile if profile is not None else prefix_profile(chi, store=True)
    return prof.S(M + N) - prof.S(M)


def pv_ratio(chi: DirichletCharacter, profile: Optional[CharSumProfile] = None) -> float:
    """max_x |S(x)| / (sqrt(q) log q) for a non-principal character, q >= 3."""
    q = chi.modulus
    if chi.is_principal:
        raise ValueError("pv_ratio is undefined for principal characters")
    if q < 3:
        raise ValueError("pv_ratio needs q >= 3")
    prof = profile if profile is not None else prefix_profile(chi)
    return prof.max_abs / (math.sqrt(q) * math.log(q))


def profile_csv(profile: CharSumProfile, out: Optional[io.TextIOBase] = None) -> str:
    """Rows ``x,re,im`` for x = 1..q, with a header."""
    buf = out if out is not None else io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "re_S", "im_S"])
    for x, s in enumerate(profile.prefix.tolist(), start=1):
        w.writerow([x, repr(s.real), repr(s.imag)])
    return buf.getvalue() if out is None else ""
