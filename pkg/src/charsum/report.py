"""Assemble every bound for one primitive character next to the empirical
quantities it is meant to control."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import bounds
from .characters import (
    DirichletCharacter,
    conjugate,
    induce_primitive,
    is_primitive,
    multiply,
    parity,
)
from .charsums import prefix_profile
from .lseries import euler_ratio, l_value, s_of_y
from .metric import EmptySearchSpace, default_max_cond, nearest_character, theoremA_conductor_cap
from .numtheory import arith_stats, factorize, is_squarefree

__all__ = ["BoundEntry", "BoundReport", "build_bound_report", "report_to_json", "lemma4_q_prime"]


@dataclass
class BoundEntry:
    value: Optional[float]
    value_log: Optional[float]
    applicable: bool
    ratio: Optional[float]  # empirical / bound


@dataclass
class BoundReport:
    label: str
    q: int
    conductor_cap: float
    max_cond: int
    xi_label: str
    m: int
    parity_product: int
    psi_label: str
    Q: int
    y: float
    s: float
    dist_sq: float
    max_abs: float
    argmax: int
    pv_ratio: float
    L_psi_abs: float
    L_chi_xi_abs: float
    xi_opposite_label: Optional[str]
    dist_sq_opposite: Optional[float]
    theorem1: BoundEntry
    corollary: BoundEntry
    theorem2: BoundEntry
    theoremA_upper: BoundEntry
    theoremB_lower: BoundEntry
    prop22: BoundEntry
    lemma4: BoundEntry
    lemma5: BoundEntry
    eps_theorem2: float = field(default=bounds.THEOREM2_EPS)
    eps_lemma5: float = field(default=bounds.LEMMA5_EPS)


def _entry(value, applicable, empirical, value_log=None) -> BoundEntry:
    if value is None:
        return BoundEntry(None, None, False, None)
    if value_log is None and value > 0:
        value_log = math.log(value)
    ratio = empirical / value if value and math.isfinite(value) and value > 0 else None
    return BoundEntry(value, value_log, bool(applicable), ratio)


def lemma4_q_prime(Q: int) -> int:
    """Smallest admissible q': the full prime-power part of Q below the
    last prime appearing to a power >= 2 (1 when Q is squarefree)."""
    f = factorize(Q).factors
    cut = max((p for p, e in f if e >= 2), default=0)
    return math.prod(p**e for p, e in f if p <= cut)


def build_bound_report(
    chi: DirichletCharacter,
    y: Optional[float] = None,
    max_cond: Optional[int] = None,
    eps_theorem2: float = bounds.THEOREM2_EPS,
    eps_lemma5: float = bounds.LEMMA5_EPS,
    tol: float = 1e-8,
) -> BoundReport:
    """Evaluate all bounds for a primitive non-principal character."""
    q = chi.modulus
    if chi.is_principal:
        raise ValueError("bound report needs a non-principal character")
    if not is_primitive(chi):
        raise ValueError("bound report needs a primitive character")
    if y is None:
        y = q
    cap = theoremA_conductor_cap(q)
    if max_cond is None:
        max_cond = default_max_cond(q)

    xi, dist = nearest_character(chi, max_cond, False, y)
    m = xi.modulus
    par = parity(chi) * parity(xi)
    try:
        xi_b, dist_b = nearest_character(chi, max_cond, True, y)
    except EmptySearchSpace:
        xi_b, dist_b = None, None

    psi = induce_primitive(multiply(chi, conjugate(xi)))
    Q = psi.modulus
    s = s_of_y(q)
    L_psi = l_value(psi, s, tol=tol).value
    L_chi_xi = L_psi * euler_ratio(chi, xi, s)

    prof = prefix_profile(chi)
    emp = prof.max_abs
    stats = arith_stats(q)

    if q >= 16:
        sqf = is_squarefree(q)
        t1 = _entry(bounds.theorem1_bound(q, stats.largest_prime_factor, stats.num_divisors), sqf, emp)
        cor = _entry(bounds.corollary_bound(q, stats.largest_prime_factor), sqf, emp)
    else:
        t1 = cor = _entry(None, False, emp)
    t2b = bounds.theorem2_bound(q, eps_theorem2)
    t2 = _entry(t2b.value, t2b.applicable, emp, t2b.log_value)
    ab = bounds.theoremAB_bounds(q, m, par, dist.dist_sq)
    tA = _entry(ab.upper_A, True, emp)
    if xi_b is not None:
        ab_b = bounds.theoremAB_bounds(q, xi_b.modulus, -1, dist_b.dist_sq)
        lb = ab_b.lower_B
        tB = BoundEntry(lb, math.log(lb) if lb > 0 else None, lb > 0, emp / lb if lb > 0 else None)
    else:
        tB = _entry(None, False, emp)
    p22 = _entry(bounds.prop22_bound(q, abs(L_chi_xi)), True, emp)

    Lpsi_abs = abs(L_psi)
    if Q >= 16:
        qs = arith_stats(Q)
        l4 = _entry(
            bounds.lemma4_bound(Q, lemma4_q_prime(Q), qs.largest_prime_factor, qs.num_divisors),
            True,
            Lpsi_abs,
        )
    else:
        l4 = _entry(None, False, Lpsi_abs)
    if Q >= 3:
        l5b = bounds.lemma5_bound(Q, eps_lemma5)
        l5 = _entry(l5b.value, l5b.applicable, Lpsi_abs)
    else:
        l5 = _entry(None, False, Lpsi_abs)

    return BoundReport(
        label=chi.label,
        q=q,
        conductor_cap=cap,
        max_cond=max_cond,
        xi_label=xi.label,
        m=m,
        parity_product=par,
        psi_label=psi.label,
        Q=Q,
        y=float(y),
        s=s,
        dist_sq=dist.dist_sq,
        max_abs=emp,
        argmax=prof.argmax,
        pv_ratio=emp / (math.sqrt(q) * math.log(q)),
        L_psi_abs=Lpsi_abs,
        L_chi_xi_abs=abs(L_chi_xi),
        xi_opposite_label=xi_b.label if xi_b is not None else None,
        dist_sq_opposite=dist_b.dist_sq if dist_b is not None else None,
        theorem1=t1,
        corollary=cor,
        theorem2=t2,
        theoremA_upper=tA,
        theoremB_lower=tB,
        prop22=p22,
        lemma4=l4,
        lemma5=l5,
        eps_theorem2=eps_theorem2,
        eps_lemma5=eps_lemma5,
    )


def _clean(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def report_to_dict(report: BoundReport) -> dict:
    """Field order follows the dataclass; non-finite floats become null."""
    return _clean(asdict(report))


def report_to_json(report: BoundReport, indent: Optional[int] = 2) -> str:
    return json.dumps(report_to_dict(report), indent=indent)
