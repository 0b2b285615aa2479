"""Bounded search for a decomposition of the lattice into cyclic M-modules.

Given a divisor chain p_l | ... | p_1 with product the characteristic
polynomial, look for a_1, ..., a_l such that the blocks
{M^j a_i : 0 <= j < deg p_i} together form a unimodular basis and M acts
on block i with characteristic polynomial p_i.  Candidates are lattice
vectors of small norm in the definite symmetric part of L.  Failing to
find one is not a disproof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..cyclotomic import CycloFactorization, cyclotomic_poly
from ..errors import BadSplit, InvariantViolation, NotFound
from ..linalg import IntMatrix, IntPoly, Vector, char_poly, det_exact, inverse_unimodular, krylov_matrix, poly_eval_matrix
from ..milnor import MilnorLattice
from .brute import symmetric_part
from .shortvec import definite_form, short_vectors

DEFAULT_NORM_BOUND = 6


@dataclass(frozen=True)
class CyclicDecomposition:
    split: tuple[IntPoly, ...]
    generators: tuple[Vector, ...]
    basis: IntMatrix  # columns: the blocks, concatenated

    def verify(self, M: IntMatrix) -> None:
        """Re-check unimodularity and the per-block characteristic polynomials."""
        if det_exact(self.basis) not in (1, -1):
            raise InvariantViolation("block basis is not unimodular")
        conj = inverse_unimodular(self.basis) @ M @ self.basis
        start = 0
        for p in self.split:
            d = p.degree
            block = range(start, start + d)
            outside = [i for i in range(M.nrows) if i not in block]
            if any(conj[i, j] for i in outside for j in block):
                raise InvariantViolation("block is not M-invariant")
            if char_poly(conj.submatrix(block, block)) != p:
                raise InvariantViolation(f"block char poly is not {p}")
            start += d


def invariant_split(f: CycloFactorization) -> tuple[IntPoly, ...]:
    """The divisor chain p_1 = prod Phi_m, p_2 = prod_{mult >= 2} Phi_m, ..."""
    top = max((mult for _, mult in f.factors), default=0)
    out = []
    for level in range(1, top + 1):
        p = IntPoly((1,))
        for m, mult in f.factors:
            if mult >= level:
                p = p * cyclotomic_poly(m)
        out.append(p)
    return tuple(out)


def check_split(M: IntMatrix, split: Sequence[IntPoly]) -> None:
    if not split:
        raise BadSplit("empty split")
    prod = IntPoly((1,))
    for p in split:
        if not p.is_monic or p.degree < 1:
            raise BadSplit(f"split factor {p} is not monic of positive degree")
        prod = prod * p
    if prod != char_poly(M):
        raise BadSplit("split does not multiply to the characteristic polynomial")
    for big, small in zip(split, split[1:]):
        if not (big % small).is_zero():
            raise BadSplit(f"{small} does not divide {big}")


def _candidate_key(item):
    # (norm, support size, -v): e_1 comes before e_2 before -e_2 before -e_1
    norm, v = item
    return (norm, sum(1 for x in v if x), tuple(-x for x in v))


def orlik_cyclic_search(
    ml: MilnorLattice, split: Sequence[IntPoly] | None = None, bound: int = DEFAULT_NORM_BOUND
) -> CyclicDecomposition:
    """Search for generators a_1..a_l of a cyclic decomposition along `split`.

    The norm cap is raised one step at a time up to `bound`; within a cap,
    generators are tried depth-first in (norm, support size, -v) order.  The first
    hit is returned, so the result is deterministic.
    """
    M = ml.M
    if split is None:
        split = invariant_split(ml.factorization())
    split = tuple(split)
    check_split(M, split)
    killers = [poly_eval_matrix(p, M) for p in split]
    g = definite_form(symmetric_part(ml))

    tried = 0
    for cap in range(1, bound + 1):
        cands = [v for _, v in sorted(short_vectors(g, cap), key=_candidate_key)]
        if len(cands) == tried:
            continue
        tried = len(cands)
        admissible = [[v for v in cands if not any(pm @ v)] for pm in killers]
        found = _search(M, split, admissible)
        if found is not None:
            chosen, columns = found
            dec = CyclicDecomposition(split, tuple(chosen), IntMatrix.from_columns(columns))
            dec.verify(M)
            return dec
    raise NotFound(bound)


def _search(M: IntMatrix, split, admissible):
    chosen: list[Vector] = []
    columns: list[Vector] = []

    def rec(i: int) -> bool:
        if i == len(split):
            return det_exact(IntMatrix.from_columns(columns)) in (1, -1)
        d = split[i].degree
        for v in admissible[i]:
            chosen.append(v)
            columns.extend(krylov_matrix(M, v, d).columns())
            if rec(i + 1):
                return True
            del columns[-d:]
            chosen.pop()
        return False

    return (chosen, columns) if rec(0) else None


def find_cyclic_generator(ml: MilnorLattice, bound: int = DEFAULT_NORM_BOUND) -> Vector:
    dec = orlik_cyclic_search(ml, (char_poly(ml.M),), bound)
    return dec.generators[0]
