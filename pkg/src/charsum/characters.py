"""Dirichlet characters mod q with exact values.

A character is stored as an exponent vector against fixed generators of
(Z/qZ)*: the smallest primitive root for each odd prime power, and the pair
(-1, 5) for 2**a with a >= 3.  Values are rational rotations t in [0, 1)
standing for exp(2 pi i t); complex doubles are produced on demand.

>>> chi = parse_label("5:2")
>>> evaluate(chi, 2)
CharacterValue(rotation=Fraction(1, 2))
>>> conductor(chi), parity(chi), order(chi)
(5, 1, 2)
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .numtheory import euler_phi, factorize

__all__ = [
    "LocalComponent",
    "UnitGroupStructure",
    "CharacterValue",
    "DirichletCharacter",
    "unit_group",
    "principal",
    "trivial",
    "parse_label",
    "evaluate",
    "multiply",
    "conjugate",
    "parity",
    "order",
    "conductor",
    "conductor_by_scan",
    "is_primitive",
    "induce_primitive",
    "enumerate_characters",
    "enumerate_primitive",
    "character_from_values",
    "primitive_characters",
    "iter_characters",
]

DLOG_TABLE_LIMIT = 1 << 22  # larger components use Pohlig-Hellman


def _primitive_root(p: int, a: int) -> int:
    """Smallest primitive root modulo the odd prime power p**a."""
    pa = p**a
    phi = pa // p * (p - 1)
    ells = [l for l, _ in factorize(phi)]
    for g in itertools.count(2):
        if g % p == 0:
            continue
        if all(pow(g, phi // l, pa) != 1 for l in ells):
            return g


def _bsgs(g: int, h: int, n: int, order_: int) -> int:
    m = math.isqrt(order_) + 1
    table = {}
    e = 1
    for j in range(m):
        table.setdefault(e, j)
        e = e * g % n
    step = pow(g, -m, n)
    gamma = h
    for i in range(m):
        if gamma in table:
            return i * m + table[gamma]
        gamma = gamma * step % n
    raise ValueError("discrete log does not exist")


def _pohlig_hellman(g: int, h: int, n: int, order_: int) -> int:
    residues, moduli = [], []
    for l, e in factorize(order_):
        le = l**e
        g_l = pow(g, order_ // le, n)
        h_l = pow(h, order_ // le, n)
        gamma = pow(g_l, l ** (e - 1), n)
        x = 0
        for k in range(e):
            hk = pow(pow(g_l, -x, n) * h_l % n, l ** (e - 1 - k), n)
            x += _bsgs(gamma, hk, n, l) * l**k
        residues.append(x)
        moduli.append(le)
    x, m = 0, 1
    for r, le in zip(residues, moduli):
        # CRT step
        t = (r - x) * pow(m, -1, le) % le
        x += m * t
        m *= le
    return x % order_


@dataclass(frozen=True, eq=False)
class LocalComponent:
    """The factor (Z/p^a)* of the unit group, with its generators.

    ``generators`` holds (residue mod p**a, multiplicative order) pairs;
    ``lifts`` holds the same generators lifted by CRT to residues mod q that
    are 1 modulo every other prime power of q.
    """

    prime: int
    exponent: int
    generators: Tuple[Tuple[int, int], ...]
    lifts: Tuple[int, ...]
    _table: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    def dlog(self, n: int) -> Tuple[int, ...]:
        """Exponents of n against this component's generators (n a unit)."""
        pa = self.modulus
        n %= pa
        if not self.generators:
            return ()
        if self._table is not None:
            row = self._table[n]
            if row[0] < 0:
                raise ValueError(f"{n} is not a unit mod {pa}")
            return tuple(int(v) for v in row)
        if n % self.prime == 0:
            raise ValueError(f"{n} is not a unit mod {pa}")
        if self.prime == 2:
            e1 = 0 if n % 4 == 1 else 1
            m = n if e1 == 0 else pa - n
            return (e1, _pohlig_hellman(5, m, pa, self.generators[1][1]))
        g, o = self.generators[0]
        return (_pohlig_hellman(g, n, pa, o),)

    def dlog_array(self, ns: np.ndarray) -> np.ndarray:
        """Vectorized dlog; rows of -1 mark non-units. Shape (len(ns), r)."""
        pa = self.modulus
        r = len(self.generators)
        ns = np.asarray(ns, dtype=np.int64) % pa
        if self._table is not None:
            return self._table[ns]
        out = np.full((len(ns), r), -1, dtype=np.int64)
        for i, n in enumerate(ns.tolist()):
            if n % self.prime:
                out[i] = self.dlog(n)
        return out


def _build_component(p: int, a: int, q: int) -> LocalComponent:
    pa = p**a
    if p == 2:
        if a == 1:
            gens: Tuple[Tuple[int, int], ...] = ()
        elif a == 2:
            gens = ((3, 2),)
        else:
            gens = ((pa - 1, 2), (5, pa // 4))
    else:
        gens = ((_primitive_root(p, a), pa // p * (p - 1)),)
    rest = q // pa
    lifts = []
    for g, _ in gens:
        # x = g mod p^a, x = 1 mod rest
        t = (g - 1) * pow(rest, -1, pa) % pa if rest > 1 else (g - 1) % pa
        lifts.append((1 + rest * t) % q if rest > 1 else g % q)
    table = None
    if gens and pa <= DLOG_TABLE_LIMIT:
        table = np.full((pa, len(gens)), -1, dtype=np.int64)
        if p == 2 and a >= 3:
            o5 = pa // 4
            v = 1
            for e2 in range(o5):
                table[v] = (0, e2)
                table[pa - v] = (1, e2)
                v = v * 5 % pa
        else:
            g, o = gens[0]
            v = 1
            for e in range(o):
                table[v, 0] = e
                v = v * g % pa
        table.setflags(write=False)
    return LocalComponent(p, a, gens, tuple(lifts), table)


class UnitGroupStructure:
    """(Z/qZ)* as a product of cyclic groups with canonical generators."""

    __slots__ = ("modulus", "components", "orders", "lifts", "exponent", "phi", "_rot")

    def __init__(self, q: int):
        if q < 1:
            raise ValueError("modulus must be positive")
        self.modulus = q
        self.components = tuple(_build_component(p, a, q) for p, a in factorize(q))
        self.orders = tuple(o for c in self.components for _, o in c.generators)
        self.lifts = tuple(x for c in self.components for x in c.lifts)
        self.exponent = math.lcm(*self.orders) if self.orders else 1
        self.phi = euler_phi(q)
        self._rot = None

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def generators(self) -> Tuple[Tuple[int, int], ...]:
        """Lifted generators mod q paired with their orders."""
        return tuple(zip(self.lifts, self.orders))

    def is_unit(self, n: int) -> bool:
        return math.gcd(n, self.modulus) == 1

    def dlog(self, n: int) -> Tuple[int, ...]:
        out: Tuple[int, ...] = ()
        for c in self.components:
            out += c.dlog(n)
        return out

    def dlog_matrix(self) -> np.ndarray:
        """Discrete logs of every residue 0..q-1; rows of -1 for non-units.

        Cached; shape (q, rank).
        """
        if self._rot is None:
            q = self.modulus
            ns = np.arange(q, dtype=np.int64)
            cols = [c.dlog_array(ns) for c in self.components if c.generators]
            mat = np.concatenate(cols, axis=1) if cols else np.zeros((q, 0), dtype=np.int64)
            units = np.gcd(ns, q) == 1
            mat[~units] = -1
            mat.setflags(write=False)
            self._rot = (mat, units)
        return self._rot[0]

    def unit_mask(self) -> np.ndarray:
        self.dlog_matrix()
        return self._rot[1]

    def __repr__(self) -> str:
        return f"UnitGroupStructure(q={self.modulus}, generators={self.generators})"


@lru_cache(maxsize=4096)
def unit_group(q: int) -> UnitGroupStructure:
    return UnitGroupStructure(int(q))


@dataclass(frozen=True)
class CharacterValue:
    """Zero (rotation None) or exp(2 pi i * rotation) with rotation in [0, 1)."""

    rotation: Optional[Fraction]

    @property
    def is_zero(self) -> bool:
        return self.rotation is None

    def __complex__(self) -> complex:
        if self.rotation is None:
            return 0j
        return _root(self.rotation.numerator, self.rotation.denominator)

    def __mul__(self, other: "CharacterValue") -> "CharacterValue":
        if self.rotation is None or other.rotation is None:
            return ZERO
        return CharacterValue((self.rotation + other.rotation) % 1)

    def conjugate(self) -> "CharacterValue":
        return self if self.rotation is None else CharacterValue((-self.rotation) % 1)


ZERO = CharacterValue(None)


def _root(num: int, den: int) -> complex:
    """exp(2 pi i num/den), exact at multiples of 1/4 and conjugation-symmetric."""
    num %= den
    if 4 * num % den == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[4 * num // den]
    flip = 2 * num > den
    if flip:
        num = den - num
    t = 2 * math.pi * num / den
    z = complex(math.cos(t), math.sin(t))
    return z.conjugate() if flip else z


@lru_cache(maxsize=256)
def root_table(den: int) -> np.ndarray:
    """exp(2 pi i k/den) for k in [0, den), conjugation-symmetric."""
    out = np.array([_root(k, den) for k in range(den)], dtype=np.complex128)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    structure: UnitGroupStructure = field(repr=False)
    exponents: Tuple[int, ...]

    def __post_init__(self):
        orders = self.structure.orders
        if len(self.exponents) != len(orders):
            raise ValueError(
                f"modulus {self.modulus} needs {len(orders)} exponents, got {len(self.exponents)}"
            )
        for e, o in zip(self.exponents, orders):
            if not 0 <= e < o:
                raise ValueError(f"exponent {e} out of range [0, {o}) for modulus {self.modulus}")

    @property
    def modulus(self) -> int:
        return self.structure.modulus

    @property
    def label(self) -> str:
        return f"{self.modulus}:" + ",".join(map(str, self.exponents))

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.modulus == other.modulus and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash((self.modulus, self.exponents))

    def __repr__(self) -> str:
        return f"DirichletCharacter({self.label!r})"

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        return multiply(self, other)

    def __call__(self, n: int) -> complex:
        return complex(evaluate(self, n))

    def _weights(self) -> Tuple[int, ...]:
        E = self.structure.exponent
        return tuple(e * (E // o) for e, o in zip(self.exponents, self.structure.orders))

    def rotation_table(self) -> np.ndarray:
        """Numerators k with chi(n) = exp(2 pi i k/E), E the group exponent.

        Indexed by n mod q; -1 marks non-units.
        """
        return _rotation_table(self)

    def values(self) -> np.ndarray:
        """Complex values chi(0), ..., chi(q-1)."""
        rot = self.rotation_table()
        roots = root_table(self.structure.exponent)
        out = roots[np.where(rot < 0, 0, rot)]
        out[rot < 0] = 0
        return out

    def rotations_at(self, ns: np.ndarray) -> np.ndarray:
        """Rotation numerators (over the group exponent) at arbitrary integers."""
        ns = np.asarray(ns, dtype=np.int64)
        q = self.modulus
        if q <= DLOG_TABLE_LIMIT:
            return self.rotation_table()[ns % q]
        E = self.structure.exponent
        w = np.array(self._weights(), dtype=np.int64)
        out = np.zeros(len(ns), dtype=np.int64)
        bad = np.zeros(len(ns), dtype=bool)
        i = 0
        for comp in self.structure.components:
            k = len(comp.generators)
            if not k:
                bad |= ns % comp.prime == 0
                continue
            logs = comp.dlog_array(ns)
            bad |= logs[:, 0] < 0
            out = (out + (np.where(logs < 0, 0, logs) * w[i : i + k]).sum(axis=1)) % E
            i += k
        out[bad] = -1
        return out


_rot_cache: dict = {}


def _rotation_table(chi: DirichletCharacter) -> np.ndarray:
    key = (chi.modulus, chi.exponents)
    tab = _rot_cache.get(key)
    if tab is None:
        s = chi.structure
        E = s.exponent
        mat = s.dlog_matrix()
        w = np.array(chi._weights(), dtype=np.int64)
        tab = (mat * w).sum(axis=1) % E if s.rank else np.zeros(s.modulus, dtype=np.int64)
        tab[~s.unit_mask()] = -1
        tab.setflags(write=False)
        if len(_rot_cache) > 20000:
            _rot_cache.clear()
        _rot_cache[key] = tab
    return tab


def principal(q: int) -> DirichletCharacter:
    s = unit_group(q)
    return DirichletCharacter(s, (0,) * s.rank)


def trivial() -> DirichletCharacter:
    """The character mod 1, constantly 1."""
    return principal(1)


def parse_label(label: str) -> DirichletCharacter:
    """Parse ``"q:e_1,...,e_r"``; raises ValueError on malformed input."""
    head, sep, tail = label.strip().partition(":")
    if not sep or not head.isdigit():
        raise ValueError(f"bad character label {label!r}")
    q = int(head)
    if q < 1:
        raise ValueError(f"bad modulus in {label!r}")
    parts = tail.split(",") if tail else []
    if not all(p.isdigit() for p in parts):
        raise ValueError(f"bad exponents in {label!r}")
    return DirichletCharacter(unit_group(q), tuple(int(p) for p in parts))


def evaluate(chi: DirichletCharacter, n: int) -> CharacterValue:
    s = chi.structure
    if math.gcd(n, s.modulus) != 1:
        return ZERO
    logs = s.dlog(n)
    t = sum((Fraction(e * l, o) for e, l, o in zip(chi.exponents, logs, s.orders)), Fraction(0))
    return CharacterValue(t % 1)


def character_from_values(structure: UnitGroupStructure, rotation_at) -> DirichletCharacter:
    """Build the character mod ``structure.modulus`` whose value at each
    canonical generator is ``rotation_at(generator)`` (a Fraction in [0, 1))."""
    exps = []
    for g, o in structure.generators:
        t = rotation_at(g)
        e = t * o
        if e.denominator != 1:
            raise ValueError(f"rotation {t} at generator {g} incompatible with order {o}")
        exps.append(int(e) % o)
    return DirichletCharacter(structure, tuple(exps))


def _rotation_num(chi: DirichletCharacter, n: int) -> int:
    """chi(n) as a numerator over the group exponent; -1 when chi(n) = 0."""
    q = chi.modulus
    if q <= DLOG_TABLE_LIMIT:
        return int(chi.rotation_table()[n % q])
    if math.gcd(n, q) != 1:
        return -1
    E = chi.structure.exponent
    return sum(w * l for w, l in zip(chi._weights(), chi.structure.dlog(n))) % E


def _from_numerators(structure: UnitGroupStructure, num_at, den: int) -> DirichletCharacter:
    exps = []
    for g, o in structure.generators:
        k = num_at(g) * o
        if k % den:
            raise ValueError(f"rotation {num_at(g)}/{den} at generator {g} incompatible with order {o}")
        exps.append(k // den % o)
    return DirichletCharacter(structure, tuple(exps))


def multiply(chi1: DirichletCharacter, chi2: DirichletCharacter) -> DirichletCharacter:
    """The product character, modulo lcm of the two moduli."""
    if chi1.modulus == chi2.modulus:
        s = chi1.structure
        return DirichletCharacter(
            s, tuple((a + b) % o for a, b, o in zip(chi1.exponents, chi2.exponents, s.orders))
        )
    E1, E2 = chi1.structure.exponent, chi2.structure.exponent
    den = math.lcm(E1, E2)
    f1, f2 = den // E1, den // E2
    target = unit_group(math.lcm(chi1.modulus, chi2.modulus))
    return _from_numerators(
        target, lambda g: _rotation_num(chi1, g) * f1 + _rotation_num(chi2, g) * f2, den
    )


def conjugate(chi: DirichletCharacter) -> DirichletCharacter:
    s = chi.structure
    return DirichletCharacter(s, tuple((-e) % o for e, o in zip(chi.exponents, s.orders)))


def parity(chi: DirichletCharacter) -> int:
    """chi(-1), as +1 (even) or -1 (odd)."""
    v = evaluate(chi, -1)
    return 1 if v.rotation == 0 else -1


def order(chi: DirichletCharacter) -> int:
    return math.lcm(*(o // math.gcd(e, o) for e, o in zip(chi.exponents, chi.structure.orders)))


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def conductor(chi: DirichletCharacter) -> int:
    """Conductor from the local orders of the character."""
    f = 1
    exps = iter(chi.exponents)
    for comp in chi.structure.components:
        p = comp.prime
        local = [(next(exps), o) for _, o in comp.generators]
        if p == 2:
            if len(local) == 2:
                e2, o2 = local[1]
                k2 = o2 // math.gcd(e2, o2)
                if k2 > 1:
                    f *= 2 ** (2 + _vp(k2, 2))
                elif local[0][0]:
                    f *= 4
            elif len(local) == 1 and local[0][0]:
                f *= 4
        elif local:
            e, o = local[0]
            k = o // math.gcd(e, o)
            if k > 1:
                f *= p ** (1 + _vp(k, p))
    return f


def conductor_by_scan(chi: DirichletCharacter) -> int:
    """Smallest f | q with chi(n) = 1 for every unit n = 1 mod f (brute force)."""
    q = chi.modulus
    rot = chi.rotation_table()
    for f in sorted(_divisors(q)):
        ns = np.arange(1, q + 1, f) % q
        r = rot[ns]
        if np.all(r[r >= 0] == 0):
            return f
    return q


def _divisors(n: int) -> List[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def is_primitive(chi: DirichletCharacter) -> bool:
    return conductor(chi) == chi.modulus


def _coprime_lift(g: int, f: int, q: int) -> int:
    n = g
    while math.gcd(n, q) != 1:
        n += f
    return n


def induce_primitive(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod conductor(chi) that induces chi."""
    f = conductor(chi)
    if f == chi.modulus:
        return chi
    q = chi.modulus
    return _from_numerators(
        unit_group(f), lambda g: _rotation_num(chi, _coprime_lift(g, f, q)), chi.structure.exponent
    )


def enumerate_characters(q: int) -> List[DirichletCharacter]:
    """All phi(q) characters mod q, exponent vectors in lexicographic order."""
    s = unit_group(q)
    return [DirichletCharacter(s, e) for e in itertools.product(*(range(o) for o in s.orders))]


def iter_characters(q: int) -> Iterator[DirichletCharacter]:
    s = unit_group(q)
    for e in itertools.product(*(range(o) for o in s.orders)):
        yield DirichletCharacter(s, e)


@lru_cache(maxsize=1024)
def _primitive_of_modulus(q: int) -> Tuple[DirichletCharacter, ...]:
    if q % 4 == 2:
        return ()
    return tuple(chi for chi in iter_characters(q) if conductor(chi) == q)


def primitive_characters(q: int) -> Tuple[DirichletCharacter, ...]:
    """Primitive characters of modulus exactly q (the trivial one for q = 1)."""
    return _primitive_of_modulus(int(q))


def enumerate_primitive(max_cond: int, parity_filter: Optional[int] = None) -> List[DirichletCharacter]:
    """Primitive characters of conductor <= max_cond, ordered by (conductor, exponents)."""
    if parity_filter not in (None, 1, -1):
        raise ValueError("parity_filter must be None, 1 or -1")
    out = []
    for q in range(1, int(max_cond) + 1):
        for chi in primitive_characters(q):
            if parity_filter is None or parity(chi) == parity_filter:
                out.append(chi)
    return out


def sort_key(chi: DirichletCharacter) -> Tuple[int, Tuple[int, ...]]:
    """Deterministic ordering: modulus, then exponent vector."""
    return (chi.modulus, chi.exponents)


def characters_in_order(chars: Sequence[DirichletCharacter]) -> List[DirichletCharacter]:
    return sorted(chars, key=sort_key)
