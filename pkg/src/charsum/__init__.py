"""Dirichlet characters, character sums, the pretentious distance, L(s, chi)
for real s > 1, and explicit bounds for character sums."""

from .characters import (
    DirichletCharacter,
    conductor,
    conjugate,
    enumerate_characters,
    enumerate_primitive,
    induce_primitive,
    is_primitive,
    multiply,
    order,
    parity,
    parse_label,
    primitive_characters,
    principal,
    trivial,
)
from .charsums import interval_sum, prefix_profile, pv_ratio
from .lseries import l_value, lemma3_defect, euler_ratio, s_of_y
from .metric import distance, distance_sq, nearest_character
from .numtheory import arith_stats, factorize

__all__ = [
    "DirichletCharacter",
    "conductor",
    "conjugate",
    "enumerate_characters",
    "enumerate_primitive",
    "induce_primitive",
    "is_primitive",
    "multiply",
    "order",
    "parity",
    "parse_label",
    "primitive_characters",
    "principal",
    "trivial",
    "interval_sum",
    "prefix_profile",
    "pv_ratio",
    "l_value",
    "lemma3_defect",
    "euler_ratio",
    "s_of_y",
    "distance",
    "distance_sq",
    "nearest_character",
    "arith_stats",
    "factorize",
]

__version__ = "0.1.0"
