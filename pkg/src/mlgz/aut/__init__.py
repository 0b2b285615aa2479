"""Engines computing G_Z = Aut(Milnor lattice, Seifert form)."""

from .brute import brute_force_aut
from .crt import crt_unit_aut, signed_monodromy_group
from .d2k import D2kReport, d2k_analysis, d2k_aut, rank2_definite_aut_order, rank2_definite_automorphisms
from .group import AutGroup
from .orlik import CyclicDecomposition, find_cyclic_generator, invariant_split, orlik_cyclic_search

__all__ = [
    "AutGroup",
    "CyclicDecomposition",
    "D2kReport",
    "brute_force_aut",
    "crt_unit_aut",
    "d2k_analysis",
    "d2k_aut",
    "find_cyclic_generator",
    "invariant_split",
    "orlik_cyclic_search",
    "rank2_definite_aut_order",
    "rank2_definite_automorphisms",
    "signed_monodromy_group",
]
