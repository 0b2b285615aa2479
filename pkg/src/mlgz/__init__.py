"""Exact computations on Milnor lattices: Seifert form, monodromy, and G_Z."""

from .catalog import CatalogEntry, load_catalog, shipped_catalog, verify_all
from .cyclotomic import (
    CycloFactorization,
    acampo_check,
    chain_condition_witness,
    cyclotomic_factor,
    cyclotomic_poly,
    exists_minus_id_power,
    power_traces,
    signed_power_group_order,
    trace_sum,
)
from .linalg import IntMatrix, IntPoly, char_poly, det_exact, smith_kernel, smith_normal_form
from .milnor import MilnorLattice, ade_milnor, coxeter_matrix, make_from_seifert, suspend

__version__ = "0.1.0"
