"""charsum command line: analyze one character, scan moduli, run verification suites.

Exit codes: 0 success, 1 a verification suite failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from . import bounds
from .characters import (
    DirichletCharacter,
    conductor,
    is_primitive,
    order,
    parity,
    parse_label,
    unit_group,
)
from .charsums import prefix_profile, profile_csv
from .metric import EmptySearchSpace, default_max_cond, distance_sq, nearest_character
from .numtheory import arith_stats, is_squarefree, radical
from .report import build_bound_report, report_to_dict
from .verify import SUITES, run_suite, _pv_for_modulus

SCAN_COLUMNS = [
    "q",
    "label",
    "conductor",
    "parity",
    "order",
    "max_abs_sum",
    "pv_ratio",
    "dist_sq_to_nearest",
    "nearest_label",
    "theorem1_bound",
    "corollary_bound",
    "theorem2_bound",
    "theorem2_applicable",
    "ratio_empirical_over_theorem1",
]

SCAN_GUARD = 10**6


class UsageError(Exception):
    pass


def _finite(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _threads(arg: Optional[int]) -> int:
    env = os.environ.get("CHARSUM_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise UsageError(f"CHARSUM_THREADS must be an integer, got {env!r}")
    elif arg is not None:
        n = arg
    else:
        n = os.cpu_count() or 1
    if n < 1:
        raise UsageError("thread count must be >= 1")
    return n


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# analyze -------------------------------------------------------------------------


def _resolve_character(args) -> DirichletCharacter:
    if args.label is not None and args.index is not None:
        raise UsageError("give either --label or --index, not both")
    if args.label is not None:
        try:
            chi = parse_label(args.label)
        except ValueError as exc:
            raise UsageError(str(exc))
        if args.modulus is not None and chi.modulus != args.modulus:
            raise UsageError(f"label {args.label!r} is not a character mod {args.modulus}")
        return chi
    if args.modulus is None:
        raise UsageError("need --modulus (with --index) or --label")
    if args.modulus < 1:
        raise UsageError("modulus must be positive")
    s = unit_group(args.modulus)
    if args.index is None:
        return DirichletCharacter(s, (0,) * s.rank)
    if not 0 <= args.index < s.phi:
        raise UsageError(f"index {args.index} out of range [0, {s.phi})")
    # enumeration order is lexicographic in the exponent vector
    exps, k = [], args.index
    for o in reversed(s.orders):
        k, r = divmod(k, o)
        exps.append(r)
    return DirichletCharacter(s, tuple(reversed(exps)))


def _theorem_columns(q: int, max_abs: float, eps: float):
    if q >= 16:
        st = arith_stats(q)
        t1 = bounds.theorem1_bound(q, st.largest_prime_factor, st.num_divisors)
        cor = bounds.corollary_bound(q, st.largest_prime_factor)
    else:
        t1 = cor = None
    if q >= 3:
        t2 = bounds.theorem2_bound(q, eps)
        t2v, t2a = t2.value, t2.applicable
    else:
        t2v, t2a = None, None
    return t1, cor, t2v, t2a, (max_abs / t1 if t1 else None)


def scan_row(chi: DirichletCharacter, max_abs: float, y, max_cond, eps: float) -> dict:
    q = chi.modulus
    mc = max_cond if max_cond is not None else (default_max_cond(q) if q >= 3 else 1)
    xi, rep = nearest_character(chi, mc, False, q if y is None else y)
    t1, cor, t2v, t2a, ratio = _theorem_columns(q, max_abs, eps)
    return {
        "q": q,
        "label": chi.label,
        "conductor": conductor(chi),
        "parity": parity(chi),
        "order": order(chi),
        "max_abs_sum": max_abs,
        "pv_ratio": max_abs / (math.sqrt(q) * math.log(q)) if q >= 3 and not chi.is_principal else None,
        "dist_sq_to_nearest": rep.dist_sq,
        "nearest_label": xi.label,
        "theorem1_bound": t1,
        "corollary_bound": cor,
        "theorem2_bound": t2v,
        "theorem2_applicable": t2a,
        "ratio_empirical_over_theorem1": ratio,
    }


def analyze(chi: DirichletCharacter, y=None, max_cond=None, opposite_parity=False, eps=None, tol=1e-8) -> dict:
    q = chi.modulus
    eps2 = bounds.THEOREM2_EPS if eps is None else eps
    eps5 = bounds.LEMMA5_EPS if eps is None else min(eps, 0.25)
    yy = q if y is None else y
    prof = prefix_profile(chi)
    prim = is_primitive(chi)
    mc = max_cond if max_cond is not None else (default_max_cond(q) if q >= 3 else 1)
    nearest, note = None, None
    try:
        xi, rep = nearest_character(chi, mc, opposite_parity, yy)
        nearest = {"label": xi.label, "conductor": xi.modulus, "dist_sq": rep.dist_sq, "dist": rep.dist}
    except EmptySearchSpace as exc:
        note = str(exc)
    report, report_note = None, None
    if chi.is_principal or not prim:
        report_note = "bound report needs a primitive non-principal character"
    elif q < 3:
        report_note = "bound report needs q >= 3"
    else:
        report = report_to_dict(build_bound_report(chi, y, max_cond, eps2, eps5, tol))
    Sq = complex(prof.prefix[-1]) if prof.prefix is not None else None
    return {
        "label": chi.label,
        "modulus": q,
        "conductor": conductor(chi),
        "parity": parity(chi),
        "order": order(chi),
        "primitive": prim,
        "principal": chi.is_principal,
        "max_abs_sum": prof.max_abs,
        "argmax": prof.argmax,
        "S_q": [Sq.real, Sq.imag] if Sq is not None else None,
        "pv_ratio": prof.max_abs / (math.sqrt(q) * math.log(q)) if q >= 3 and not chi.is_principal else None,
        "y": float(yy),
        "max_cond": mc,
        "opposite_parity": bool(opposite_parity),
        "dist_sq_to_trivial": distance_sq(chi, parse_label("1:"), yy),
        "nearest": nearest,
        "nearest_note": note,
        "report": report,
        "report_note": report_note,
    }


def _clean(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _dump(obj) -> str:
    return json.dumps(_clean(obj), indent=2) + "\n"


def _csv_text(rows: List[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_COLUMNS)
    for r in rows:
        w.writerow(["" if r[c] is None else (repr(r[c]) if isinstance(r[c], float) else r[c]) for c in SCAN_COLUMNS])
    return buf.getvalue()


def cmd_analyze(args) -> int:
    chi = _resolve_character(args)
    if args.y is not None and args.y < 0:
        raise UsageError("--y must be nonnegative")
    if args.max_cond is not None and args.max_cond < 1:
        raise UsageError("--max-cond must be >= 1")
    if args.eps is not None and not 0 < args.eps <= 0.125:
        raise UsageError("--eps must lie in (0, 1/8]")
    if args.profile_csv:
        prof = prefix_profile(chi, store=True)
        with open(args.profile_csv, "w", newline="") as fh:
            profile_csv(prof, fh)
    if args.format == "csv":
        prof = prefix_profile(chi)
        _emit(_csv_text([scan_row(chi, prof.max_abs, args.y, args.max_cond, args.eps or bounds.THEOREM2_EPS)]), args.out)
        return 0
    doc = analyze(chi, args.y, args.max_cond, args.opposite_parity, args.eps, args.tol)
    _emit(_dump(doc), args.out)
    return 0


# scan ----------------------------------------------------------------------------


def parse_filters(specs: Optional[List[str]]):
    """Returns (squarefree, powerful, smooth_bound)."""
    sqf = pw = False
    smooth = None
    for spec in specs or []:
        for item in spec.split(","):
            item = item.strip()
            if item == "squarefree":
                sqf = True
            elif item == "powerful":
                pw = True
            elif item.startswith("smooth-bound"):
                _, sep, val = item.partition("=")
                try:
                    b = int(val) if sep else None
                except ValueError:
                    b = None
                if b is None or b < 1:
                    raise UsageError("smooth-bound needs a positive integer: smooth-bound=B")
                if smooth is not None and smooth != b:
                    raise UsageError("conflicting smooth-bound filters")
                smooth = b
            elif item:
                raise UsageError(f"unknown filter {item!r}")
    if sqf and pw:
        raise UsageError("filters squarefree and powerful conflict")
    return sqf, pw, smooth


def modulus_passes(q: int, sqf: bool, pw: bool, smooth: Optional[int]) -> bool:
    if sqf and not is_squarefree(q):
        return False
    if pw and math.log(radical(q)) > math.log(q) ** 0.75:
        return False
    if smooth is not None and arith_stats(q).largest_prime_factor > smooth:
        return False
    return True


def _scan_modulus(q: int, aggregate: bool, y, max_cond, eps: float) -> List[dict]:
    ex, mx, _ = _pv_for_modulus(q)
    if len(ex) == 0:
        return []
    s = unit_group(q)
    if aggregate:
        i = int(mx.argmax())
        picks = [i]
    else:
        picks = range(len(ex))
    return [scan_row(DirichletCharacter(s, tuple(int(e) for e in ex[i])), float(mx[i]), y, max_cond, eps) for i in picks]


def scan(max_q: int, filters=None, aggregate=False, y=None, max_cond=None, eps=None, threads=1) -> List[dict]:
    sqf, pw, smooth = parse_filters(filters)
    eps = bounds.THEOREM2_EPS if eps is None else eps
    qs = [q for q in range(3, max_q + 1) if q % 4 != 2 and modulus_passes(q, sqf, pw, smooth)]
    work = lambda q: _scan_modulus(q, aggregate, y, max_cond, eps)
    if threads > 1 and len(qs) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(work, qs))  # map keeps modulus order
    else:
        parts = [work(q) for q in qs]
    return [r for p in parts for r in p]


def cmd_scan(args) -> int:
    if args.max_q is None:
        raise UsageError("scan needs --max-q")
    if args.max_q > SCAN_GUARD and not args.allow_large:
        raise UsageError(f"--max-q above {SCAN_GUARD} needs --allow-large")
    if args.eps is not None and not 0 < args.eps <= 0.125:
        raise UsageError("--eps must lie in (0, 1/8]")
    rows = scan(args.max_q, args.filter, args.aggregate, args.y, args.max_cond, args.eps, _threads(args.threads))
    if args.format == "csv":
        _emit(_csv_text(rows), args.out)
    else:
        _emit(_dump({"columns": SCAN_COLUMNS, "rows": rows}), args.out)
    return 0


# verify --------------------------------------------------------------------------


def cmd_verify(args) -> int:
    name = args.suite
    if name != "all" and name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    res = run_suite(name)
    doc = res.to_dict()
    if not args.timing:
        doc["elapsed_ms"] = None
        for sub in doc.get("details", {}).get("suites", []):
            sub["elapsed_ms"] = None
    print(f"{res.name}: {res.passed}/{res.run} passed in {res.elapsed_ms / 1e3:.1f} s", file=sys.stderr)
    _emit(_dump(doc), args.out)
    return 0 if res.ok else 1


# entry ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="charsum", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--y", type=float, help="prime cutoff for distances (default q)")
        sp.add_argument("--eps", type=float, help="epsilon for the smooth-radical bounds (default 0.01)")
        sp.add_argument("--max-cond", type=int, help="largest conductor in the nearest-character search")
        sp.add_argument("--tol", type=float, default=1e-8, help="L-value tolerance (default 1e-8)")
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--out", help="write to FILE instead of standard output")
        sp.add_argument("--threads", type=int, help="worker threads (default: all cores; CHARSUM_THREADS wins)")

    a = sub.add_parser("analyze", help="bound report for one character")
    a.add_argument("--modulus", type=int)
    a.add_argument("--label", help='character label "q:e1,...,er"')
    a.add_argument("--index", type=int, help="position in the lexicographic enumeration mod q")
    a.add_argument("--opposite-parity", action="store_true", help="search only xi of opposite parity")
    a.add_argument("--profile-csv", help="also write the prefix sums S(1..q) to FILE")
    common(a)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("scan", help="one row per primitive character up to --max-q")
    s.add_argument("--max-q", type=int)
    s.add_argument("--filter", action="append", help="squarefree | powerful | smooth-bound=B (repeatable)")
    s.add_argument("--aggregate", action="store_true", help="one row per modulus: the largest max_abs_sum")
    s.add_argument("--allow-large", action="store_true", help=f"permit --max-q above {SCAN_GUARD}")
    common(s)
    s.set_defaults(func=cmd_scan, format="csv")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True)
    v.add_argument("--timing", action="store_true", help="include elapsed times in the JSON")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if hasattr(args, "threads"):
            _threads(args.threads)
        return args.func(args)
    except UsageError as exc:
        print(f"charsum: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
