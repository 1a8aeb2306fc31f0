"""Verification suites: exhaustive or randomized checks of the identities and
inequalities the library is built on.  Each suite returns a SuiteResult with
a case count, a pass count and the worst case seen."""

from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import bounds
from .characters import (
    DirichletCharacter,
    conductor,
    conjugate,
    enumerate_characters,
    enumerate_primitive,
    induce_primitive,
    multiply,
    primitive_characters,
    root_table,
    unit_group,
)
from .lseries import (
    EULER_PRODUCT,
    SUMMATION,
    NonConvergenceError,
    euler_ratio,
    l_value,
    prime_divisor_recip_sum,
    s_of_y,
)
from .metric import distance_sq
from .numtheory import arith_stats, mertens_sum, primes_up_to

__all__ = ["SuiteResult", "SUITES", "run_suite", "primitive_exponent_matrix"]

LEMMA3_THRESHOLD = 3.0
GCD_PART1_CONSTANT = 4.0
TRIANGLE_SLACK = 1e-10
PV_BOUND = 1.0


@dataclass
class SuiteResult:
    name: str
    run: int
    passed: int
    witness: Optional[dict]
    elapsed_ms: float
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.run == self.passed

    def to_dict(self) -> dict:
        return asdict(self)


class _Tally:
    """Counts cases and keeps the worst one (largest ``badness``)."""

    def __init__(self):
        self.run = 0
        self.passed = 0
        self.worst = None
        self.worst_badness = -math.inf
        self.first_failure = None

    def add(self, ok: bool, badness: float, witness: Callable[[], dict]):
        self.run += 1
        if ok:
            self.passed += 1
        elif self.first_failure is None:
            self.first_failure = witness()
        if badness > self.worst_badness:
            self.worst_badness = badness
            self.worst = witness

    def add_many(self, n_run: int, n_ok: int):
        self.run += n_run
        self.passed += n_ok

    def result(self, name: str, t0: float, details: Optional[dict] = None) -> SuiteResult:
        if self.passed < self.run:
            witness = self.first_failure
        else:
            witness = self.worst() if self.worst is not None else None
        return SuiteResult(name, self.run, self.passed, witness, (time.perf_counter() - t0) * 1e3, details or {})


def _finite(x):
    return float(x) if x is not None and math.isfinite(x) else None


# conductor lemma --------------------------------------------------------------


def suite_conductor_lemma(max_q: int = 40) -> SuiteResult:
    """cond(chi1 chi2) divides lcm(cond chi1, cond chi2) for every pair of
    non-principal characters with moduli <= max_q."""
    t0 = time.perf_counter()
    chars = [c for q in range(1, max_q + 1) for c in enumerate_characters(q) if not c.is_principal]
    conds = [conductor(c) for c in chars]
    tally = _Tally()
    for i, (a, fa) in enumerate(zip(chars, conds)):
        for b, fb in zip(chars[i:], conds[i:]):
            f = conductor(multiply(a, b))
            L = math.lcm(fa, fb)
            ok = L % f == 0
            tally.add(ok, f / L if ok else math.inf, lambda a=a, b=b, f=f, L=L: {
                "chi1": a.label, "chi2": b.label, "conductor_product": f, "lcm_conductors": L})
    return tally.result("conductor-lemma", t0, {"characters": len(chars)})


# conductor sandwich -----------------------------------------------------------


def suite_conductor_sandwich(max_q: int = 500, max_m: int = 12) -> SuiteResult:
    """q/m <= Q <= q m with Q = cond(chi conj(xi)), chi primitive mod q <= max_q,
    xi primitive of conductor m <= max_m."""
    t0 = time.perf_counter()
    xis = [conjugate(x) for x in enumerate_primitive(max_m)]
    tally = _Tally()
    for q in range(1, max_q + 1):
        for chi in primitive_characters(q):
            for xb in xis:
                m = xb.modulus
                Q = conductor(multiply(chi, xb))
                ok = q <= Q * m and Q <= q * m
                # badness: how close to either edge, in log terms
                bad = max(math.log(q / (Q * m)), math.log(Q / (q * m)))
                tally.add(ok, bad, lambda chi=chi, xb=xb, Q=Q: {
                    "chi": chi.label, "xi": conjugate(xb).label, "q": chi.modulus, "m": xb.modulus, "Q": Q})
    return tally.result("conductor-sandwich", t0)


# triangle inequality ----------------------------------------------------------


def _prime_value_matrix(chars: Sequence[DirichletCharacter], primes: np.ndarray) -> np.ndarray:
    """chi(p) for every character (rows) and prime (columns); zeros kept."""
    out = np.zeros((len(chars), len(primes)), dtype=np.complex128)
    for i, c in enumerate(chars):
        rot = c.rotations_at(primes)
        roots = root_table(c.structure.exponent)
        v = roots[np.where(rot < 0, 0, rot)]
        v[rot < 0] = 0
        out[i] = v
    return out


def _triangle_exhaustive(chars, y, tally, block: int = 512):
    """All quadruples from ``chars``.  With a = chi1 conj(psi1) and b = chi2
    conj(psi2) at the primes, D(chi1 chi2, psi1 psi2)^2 = sum (1 - Re a b)/p,
    so each pair (a, b) of pair-signatures covers every quadruple mapping to it."""
    primes = primes_up_to(y)
    if len(primes) == 0:
        n = len(chars) ** 4
        tally.add_many(n, n)
        return
    V = _prime_value_matrix(chars, primes)
    n = len(chars)
    A = (V[:, None, :] * V.conj()[None, :, :]).reshape(n * n, -1)
    # D(chi, psi) through the public function, one per ordered pair
    d_pair = np.array([math.sqrt(distance_sq(a, b, y)) for a in chars for b in chars])
    # collapse identical signatures; the inequality only sees the signature
    key = np.round(A.view(np.float64), 12)
    _, idx, inv = np.unique(key, axis=0, return_index=True, return_inverse=True)
    inv = inv.ravel()
    mult = np.bincount(inv)
    A = A[idx]
    d = d_pair[idx]
    Aw = (A / primes).T.copy()
    S = math.fsum((1.0 / primes).tolist())
    worst = (-math.inf, None)
    total = ok = 0
    for i0 in range(0, len(A), block):
        lhs2 = S - (A[i0 : i0 + block] @ Aw).real
        # near zero the cancellation in S - Re(...) is amplified by the square
        # root; those entries are recomputed through the public functions
        for r, c in zip(*np.nonzero(lhs2 < _NEAR_ZERO)):
            (c1, p1), (c2, p2) = _pair(chars, idx[i0 + r]), _pair(chars, idx[c])
            lhs2[r, c] = distance_sq(multiply(c1, c2), multiply(p1, p2), y)
        lhs = np.sqrt(np.maximum(lhs2, 0.0))
        rhs = d[i0 : i0 + block, None] + d[None, :]
        gap = lhs - rhs
        good = gap <= TRIANGLE_SLACK
        w = mult[i0 : i0 + block, None] * mult[None, :]
        total += int(w.sum())
        ok += int((w * good).sum())
        k = int(np.argmax(gap))
        g = float(gap.flat[k])
        if g > worst[0]:
            worst = (g, (i0 + k // len(A), k % len(A)))
    tally.add_many(total, ok)
    g, (i, j) = worst
    (c1, p1), (c2, p2) = _pair(chars, idx[i]), _pair(chars, idx[j])
    return g, {"y": y, "chi1": c1.label, "psi1": p1.label, "chi2": c2.label, "psi2": p2.label, "excess": g}


_NEAR_ZERO = 1e-6


def _pair(chars, k):
    n = len(chars)
    return chars[int(k) // n], chars[int(k) % n]


def _triangle_certificate(chars, y):
    """Per-prime certificate for every quadruple drawn from ``chars``.

    With u(z) = sqrt(1 - Re z) (and u(0) = 1), the inequality follows from
    Minkowski once u(a b) <= u(a) + u(b) holds for every pair of values
    a = chi1(p) conj(psi1(p)), b = chi2(p) conj(psi2(p)) that can occur at a
    prime p <= y.  The possible values are 0 and the rotations that occur,
    collected over all characters; this checks every pair of them."""
    primes = primes_up_to(y)
    rots = set()
    zero = False
    for c in chars:
        E = c.structure.exponent
        r = c.rotations_at(primes)
        zero |= bool((r < 0).any())
        rots.update((E, int(k)) for k in np.unique(r[r >= 0]))
    from fractions import Fraction

    single = sorted({Fraction(k, E) for E, k in rots})
    diffs = sorted({(a - b) % 1 for a in single for b in single})
    t = np.array([float(f) for f in diffs])
    den = math.lcm(*(f.denominator for f in diffs))
    num = np.array([f.numerator * (den // f.denominator) for f in diffs], dtype=object)
    # exact integer angles, so u(a b) uses the reduced angle of the sum
    num = np.array([int(x) for x in num], dtype=np.int64) if den < 2**62 // 2 else None

    def u_from_num(k):
        k = np.minimum(k % den, den - k % den)
        return np.sqrt(1.0 - np.cos(2 * np.pi * k / den))

    if num is not None:
        ua = u_from_num(num)
    else:
        ua = np.sqrt(1.0 - np.cos(2 * np.pi * t))
    worst = -math.inf
    n_ok = 0
    total = 0
    # the check is symmetric in (a, b): b ranges over a and the values after it
    for i in range(len(diffs)):
        if num is not None:
            uab = u_from_num(num[i] + num[i:])
        else:
            uab = np.sqrt(1.0 - np.cos(2 * np.pi * (t[i] + t[i:])))
        gap = uab - (ua[i] + ua[i:])
        worst = max(worst, float(gap.max()))
        n_ok += int((gap <= 1e-15).sum())
        total += len(diffs) - i
    if zero:
        # a zero on either side: u(ab) = 1 <= u(a) + 1
        extra = len(diffs) + 1
        total += extra
        n_ok += extra
    return total, n_ok, worst, len(diffs) + int(zero)


def suite_triangle(
    max_q: int = 100,
    ys: Sequence[float] = (10, 50, 1000),
    exhaustive_q: int = 24,
    samples: int = 20000,
    seed: int = 0,
) -> SuiteResult:
    """D(chi1,psi1) + D(chi2,psi2) >= D(chi1 chi2, psi1 psi2) - 1e-10.

    Three layers: every quadruple with moduli <= exhaustive_q by direct
    evaluation; a per-prime certificate that covers every quadruple with
    moduli <= max_q; random quadruples with moduli <= max_q through the
    public distance and multiply."""
    t0 = time.perf_counter()
    chars_all = [c for q in range(1, max_q + 1) for c in enumerate_characters(q)]
    chars_small = [c for c in chars_all if c.modulus <= exhaustive_q]
    tally = _Tally()
    details: Dict[str, object] = {"characters": len(chars_all), "exhaustive_q": exhaustive_q}
    worst = (-math.inf, None)
    for y in ys:
        before = (tally.run, tally.passed)
        res = _triangle_exhaustive(chars_small, y, tally)
        if res is not None and res[0] > worst[0]:
            worst = res
        details[f"exhaustive_y{int(y)}"] = {"run": tally.run - before[0], "passed": tally.passed - before[1]}
    # values at primes <= max(ys) include those at every smaller y, so one
    # certificate covers the whole grid
    total, ok, gap, nvals = _triangle_certificate(chars_all, max(ys))
    tally.add_many(total, ok)
    details["certificate"] = {"y": max(ys), "value_pairs": total, "passed": ok, "values": nvals, "max_gap": gap}
    rng = random.Random(seed)
    for y in ys:
        for _ in range(samples):
            c1, c2, p1, p2 = (rng.choice(chars_all) for _ in range(4))
            lhs = math.sqrt(distance_sq(c1, p1, y)) + math.sqrt(distance_sq(c2, p2, y))
            rhs = math.sqrt(distance_sq(multiply(c1, c2), multiply(p1, p2), y))
            g = rhs - lhs
            tally.add(g <= TRIANGLE_SLACK, g, lambda c1=c1, c2=c2, p1=p1, p2=p2, y=y, g=g: {
                "y": y, "chi1": c1.label, "psi1": p1.label, "chi2": c2.label, "psi2": p2.label, "excess": g})
        details[f"random_y{int(y)}"] = samples
    if worst[1] is not None and worst[0] > tally.worst_badness:
        tally.worst_badness, tally.worst = worst[0], (lambda w=worst[1]: w)
    return tally.result("triangle", t0, details)


# gcd sums ---------------------------------------------------------------------


def suite_gcd_sums(
    max_q: int = 300,
    max_H: int = 300,
    xs: Sequence[float] = (10, 100, 1000),
    n_qbar: int = 20,
    seed: int = 0,
) -> SuiteResult:
    t0 = time.perf_counter()
    tally = _Tally()
    h = np.arange(1, max_H + 1)
    for q in range(1, max_q + 1):
        d = arith_stats(q).num_divisors
        partial = np.cumsum(np.sqrt(np.gcd(q, h)))
        # spot-check the cumulative sums against the public calculator
        assert abs(partial[-1] - bounds.gcd_sqrt_sum(q, max_H)) < 1e-9 * partial[-1]
        ratio = partial / (d * h)
        for H in range(1, max_H + 1):
            r = float(ratio[H - 1])
            tally.add(r <= 1.0, r, lambda q=q, H=H, r=r: {"part": 2, "q": q, "H": H, "ratio": r})
    rng = random.Random(seed)
    max_ratio1 = 0.0
    for q in range(1, max_q + 1):
        d = arith_stats(q).num_divisors
        qbars = []
        while len(qbars) < n_qbar:
            c = rng.randrange(1, 10**6)
            if math.gcd(c, q) == 1:
                qbars.append(c)
        for x in xs:
            env = GCD_PART1_CONSTANT * d * (1.0 + math.log(x))
            vals = [bounds.gcd_weighted_sum(q, c, x) for c in qbars]
            for c, v in zip(qbars, vals):
                r = v / env
                max_ratio1 = max(max_ratio1, r)
                tally.add(r <= 1.0, r, lambda q=q, c=c, x=x, v=v, env=env: {
                    "part": 1, "q": q, "qbar": c, "x": x, "sum": v, "envelope": env})
            same = all(v == vals[0] for v in vals)
            tally.add(same, 0.0 if same else math.inf, lambda q=q, x=x, vals=vals: {
                "part": "invariance", "q": q, "x": x, "sums": vals})
    return tally.result("gcd-sums", t0, {"max_part1_ratio": max_ratio1, "constant": GCD_PART1_CONSTANT})


# distance vs L-value defect -------------------------------------------------------


def _recip_prime_sums(q: int, y: float) -> np.ndarray:
    """R[a] = sum_{p <= y, p = a mod q} 1/p."""
    primes = primes_up_to(y)
    return np.bincount(primes % q, weights=1.0 / primes, minlength=q)


def suite_lemma3_defect(
    max_q: int = 500,
    ys: Sequence[float] = (10, 1e2, 1e3, 1e4, 1e6),
    threshold: float = LEMMA3_THRESHOLD,
    tol: float = 1e-9,
) -> SuiteResult:
    """|D(chi,1;y)^2 - log|log y / L(s_y, chi)|| <= threshold.

    D(chi,1;y)^2 is evaluated as M(y) - Re sum_a chi(a) R_a(y) with R_a the
    reciprocal prime sums in each residue class, which is the same sum
    regrouped by residue."""
    t0 = time.perf_counter()
    tally = _Tally()
    obs = {}
    for y in ys:
        M = mertens_sum(y)
        s = s_of_y(y)
        ly = math.log(y)
        worst_y = 0.0
        for q in range(3, max_q + 1):
            chars = primitive_characters(q)
            if not chars:
                continue
            R = _recip_prime_sums(q, y)
            for chi in chars:
                d2 = M - float(np.dot(chi.values().real, R))
                L = l_value(chi, s, tol=tol).value
                v = d2 - math.log(ly / abs(L))
                worst_y = max(worst_y, abs(v))
                tally.add(abs(v) <= threshold, abs(v), lambda chi=chi, y=y, v=v, d2=d2, L=L: {
                    "chi": chi.label, "y": y, "defect": v, "dist_sq": d2, "abs_L": abs(L)})
        obs[str(y)] = worst_y
    return tally.result("lemma3-defect", t0, {"max_abs_defect_by_y": obs, "threshold": threshold})


# L-value agreement ------------------------------------------------------------

CATALAN = 0.915965594177219015054603514932384110774


def suite_l_agreement(
    max_q: int = 100,
    ss: Sequence[float] = (1.1, 1.5, 2.0, 3.0),
    tol: float = 1e-8,
) -> SuiteResult:
    """Euler product vs tail-bounded summation, plus two closed forms."""
    from .characters import parse_label, principal

    t0 = time.perf_counter()
    tally = _Tally()
    chars = enumerate_primitive(max_q)
    per_s = {}
    for s in ss:
        worst = 0.0
        failures = 0
        reason = None
        for chi in chars:
            try:
                # summation is cheap at tight tolerance; the Euler route gets the rest
                a = l_value(chi, s, tol=0.9 * tol, method=EULER_PRODUCT).value
                b = l_value(chi, s, tol=0.01 * tol, method=SUMMATION).value
                diff = abs(a - b)
                ok = diff <= tol
                w = lambda chi=chi, s=s, a=a, b=b, diff=diff: {
                    "chi": chi.label, "s": s, "euler": [a.real, a.imag], "summation": [b.real, b.imag], "diff": diff}
            except NonConvergenceError as exc:
                ok, diff = False, math.inf
                reason = str(exc)
                w = lambda chi=chi, s=s, msg=str(exc): {"chi": chi.label, "s": s, "error": msg}
            worst = max(worst, diff)
            failures += not ok
            tally.add(ok, diff, w)
        per_s[str(s)] = {"max_diff": _finite(worst), "failures": failures, "nonconvergence": reason}
    z = l_value(principal(1), 2.0, tol=1e-11).value
    dz = abs(z - math.pi**2 / 6)
    tally.add(dz <= 1e-10, dz, lambda: {"check": "zeta(2)", "diff": dz})
    c = l_value(parse_label("4:1"), 2.0, tol=1e-11).value
    dc = abs(c - CATALAN)
    tally.add(dc <= 1e-9, dc, lambda: {"check": "catalan", "diff": dc})
    return tally.result("l-agreement", t0, {"by_s": per_s, "zeta2_diff": dz, "catalan_diff": dc})


# Euler-ratio identity ----------------------------------------------------------


def suite_euler_ratio(max_q: int = 60, max_m: int = 12, s: float = 1.5, tol: float = 1e-10) -> SuiteResult:
    """euler_ratio(chi, xi, s) against L(s, chi conj xi) / L(s, psi), and the
    bound log|ratio| <= sum_{p|m} 1/p + sum_{p|q} 1/p."""
    t0 = time.perf_counter()
    tally = _Tally()
    xis = enumerate_primitive(max_m)
    for chi in enumerate_primitive(max_q):
        for xi in xis:
            prod = multiply(chi, conjugate(xi))
            if prod.is_principal and abs(s - 1) < 1e-3:
                continue
            psi = induce_primitive(prod)
            r = euler_ratio(chi, xi, s)
            direct = l_value(prod, s, tol=tol).value / l_value(psi, s, tol=tol).value
            err = abs(r - direct)
            tally.add(err <= 1e-6, err, lambda chi=chi, xi=xi, r=r, direct=direct, err=err: {
                "chi": chi.label, "xi": xi.label, "ratio": [r.real, r.imag], "L_ratio": [direct.real, direct.imag], "diff": err})
            lhs = math.log(abs(r))
            rhs = prime_divisor_recip_sum(xi.modulus) + prime_divisor_recip_sum(chi.modulus)
            tally.add(lhs <= rhs + 1e-12, lhs - rhs, lambda chi=chi, xi=xi, lhs=lhs, rhs=rhs: {
                "chi": chi.label, "xi": xi.label, "log_abs_ratio": lhs, "bound": rhs})
    return tally.result("euler-ratio", t0)


# Polya-Vinogradov ratio ---------------------------------------------------------


def primitive_exponent_matrix(q: int) -> np.ndarray:
    """Exponent vectors (rows, lexicographic) of the primitive characters mod q."""
    s = unit_group(q)
    if not s.orders:
        return np.zeros((1 if q == 1 else 0, 0), dtype=np.int64)
    grids = np.meshgrid(*(np.arange(o) for o in s.orders), indexing="ij")
    ex = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
    keep = np.ones(len(ex), dtype=bool)
    col = 0
    for comp in s.components:
        p, a = comp.prime, comp.exponent
        k = len(comp.generators)
        if p == 2:
            if a == 1:
                return ex[:0]
            if a == 2:
                keep &= ex[:, col] != 0
            else:
                keep &= ex[:, col + 1] % 2 == 1
        else:
            e = ex[:, col]
            keep &= (e != 0) if a == 1 else (e % p != 0)
        col += k
    return ex[keep]


def _pv_for_modulus(q: int, chunk_elems: int = 1 << 22):
    """(max_abs, argmax) per primitive character mod q, in exponent order."""
    ex = primitive_exponent_matrix(q)
    if len(ex) == 0:
        return ex, np.zeros(0), np.zeros(0, dtype=np.int64)
    s = unit_group(q)
    E = s.exponent
    w = ex * np.array([E // o for o in s.orders], dtype=np.int64)
    D = s.dlog_matrix()  # (q, r)
    units = s.unit_mask()
    order = np.concatenate([np.arange(1, q), [0]])  # n = 1..q
    Du = D[order]
    mask = units[order]
    roots = root_table(E)
    rows = max(1, chunk_elems // q)
    mx = np.empty(len(ex))
    am = np.empty(len(ex), dtype=np.int64)
    for i0 in range(0, len(ex), rows):
        rot = (w[i0 : i0 + rows] @ np.where(Du < 0, 0, Du).T) % E
        v = roots[rot] * mask
        a = np.abs(np.cumsum(v, axis=1))
        m = a.max(axis=1)
        mx[i0 : i0 + rows] = m
        am[i0 : i0 + rows] = np.argmax(a >= m[:, None] - 1e-9, axis=1) + 1
    return ex, mx, am


def suite_pv_ratio(max_q: int = 3000, bound: float = PV_BOUND, top: int = 10) -> SuiteResult:
    """max|S(x)| / (sqrt q log q) <= bound for primitive non-principal chi, 3 <= q <= max_q."""
    t0 = time.perf_counter()
    tally = _Tally()
    best: List[tuple] = []
    for q in range(3, max_q + 1):
        ex, mx, am = _pv_for_modulus(q)
        if len(ex) == 0:
            continue
        r = mx / (math.sqrt(q) * math.log(q))
        n_ok = int((r <= bound).sum())
        tally.add_many(len(r), n_ok)
        if n_ok < len(r) and tally.first_failure is None:
            i = int(np.argmax(r > bound))
            tally.first_failure = {"q": q, "label": f"{q}:" + ",".join(map(str, ex[i])), "pv_ratio": float(r[i])}
        idx = np.argsort(-r, kind="stable")[:top]
        for i in idx:
            best.append((-float(r[i]), q, tuple(int(e) for e in ex[i]), float(mx[i]), int(am[i])))
        best.sort()
        del best[top:]
    table = [
        {"label": f"{q}:" + ",".join(map(str, e)), "q": q, "max_abs": m, "argmax": a, "pv_ratio": -nr}
        for nr, q, e, m, a in best
    ]
    if table:
        tally.worst = lambda t=table[0]: t
    return tally.result("pv-ratio", t0, {"top": table, "bound": bound})


SUITES: Dict[str, Callable[[], SuiteResult]] = {
    "conductor-lemma": suite_conductor_lemma,
    "conductor-sandwich": suite_conductor_sandwich,
    "triangle": suite_triangle,
    "gcd-sums": suite_gcd_sums,
    "lemma3-defect": suite_lemma3_defect,
    "l-agreement": suite_l_agreement,
    "euler-ratio": suite_euler_ratio,
    "pv-ratio": suite_pv_ratio,
}


def run_suite(name: str) -> SuiteResult:
    """Run one suite by name; ``all`` runs every suite and sums the counts."""
    if name == "all":
        t0 = time.perf_counter()
        parts = [SUITES[n]() for n in SUITES]
        failed = next((p for p in parts if not p.ok), None)
        return SuiteResult(
            "all",
            sum(p.run for p in parts),
            sum(p.passed for p in parts),
            {"suite": failed.name, "witness": failed.witness} if failed else None,
            (time.perf_counter() - t0) * 1e3,
            {"suites": [p.to_dict() for p in parts]},
        )
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
