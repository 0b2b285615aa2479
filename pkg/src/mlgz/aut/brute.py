"""Definite-form backtracking for Aut(lattice, Seifert form).

The symmetric part S = L + L^T is preserved by every automorphism of L,
and for ADE models (n even) S = -I is definite.  Basis vector e_i must go
to a vector of the same S-norm, so candidates are finite.  Images are
assigned e_1, e_2, ... in turn; a candidate w for e_i survives only if
L(v_j, w) = L[j][i] and L(w, v_j) = L[i][j] for every earlier image v_j.

Every such A also commutes with M (M is a function of L), hence preserves
each form F_k(a, b) = L(a, M^k b).  These necessary conditions are used as
extra filters: unary (F_k(w, w) must equal F_k(e_i, e_i)) and pairwise,
alongside the plain L values.  Surviving candidate sets are intersections
of precomputed bitmask buckets.
"""

from __future__ import annotations

import os

from ..errors import SearchBudgetExceeded
from ..linalg import IntMatrix, dot
from ..milnor import MilnorLattice
from .group import AutGroup
from .shortvec import definite_form, vectors_of_norm

DEFAULT_BUDGET = 10**8


def default_budget() -> int:
    env = os.environ.get("MLGZ_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def symmetric_part(ml: MilnorLattice) -> IntMatrix:
    return ml.L + ml.L.T


def _invariant_forms(ml: MilnorLattice, depth: int) -> list[IntMatrix]:
    forms = [ml.L]
    for _ in range(depth):
        forms.append(forms[-1] @ ml.M)
    return forms


def brute_force_aut(ml: MilnorLattice, budget: int | None = None, depth: int = 2) -> AutGroup:
    """The complete set {A : A^T L A = L} for a lattice with definite symmetric part.

    `depth` is the number of extra forms L M^k used for pruning; it changes
    the node count, never the result.
    """
    if budget is None:
        budget = default_budget()
    L = ml.L
    mu = ml.mu
    g = definite_form(symmetric_part(ml))
    forms = _invariant_forms(ml, depth)

    def profile(u, v):
        return tuple(x for f in forms for x in (dot(u, f @ v), dot(v, f @ u)))

    basis = [tuple(int(i == j) for j in range(mu)) for i in range(mu)]
    unary = [profile(e, e) for e in basis]
    pair_key = [[profile(basis[j], basis[i]) for i in range(mu)] for j in range(mu)]

    pool = []
    level_mask = [0] * mu
    for nrm in sorted({g[i, i] for i in range(mu)}):
        for v in vectors_of_norm(g, nrm):
            pv = profile(v, v)
            hits = [i for i in range(mu) if g[i, i] == nrm and unary[i] == pv]
            if hits:
                for i in hits:
                    level_mask[i] |= 1 << len(pool)
                pool.append(v)

    images = [[f @ v for f in forms] for v in pool]
    # buckets[c][profile(c, w)] = bitmask of w
    buckets: list[dict[tuple, int]] = []
    for c in range(len(pool)):
        table: dict[tuple, int] = {}
        vc, fc = pool[c], images[c]
        for w in range(len(pool)):
            key = tuple(x for fw, fcv in zip(images[w], fc) for x in (dot(vc, fw), dot(pool[w], fcv)))
            table[key] = table.get(key, 0) | (1 << w)
        buckets.append(table)

    nodes = 0
    found = []
    chosen: list[int] = []

    def rec(i: int):
        nonlocal nodes
        if i == mu:
            found.append(IntMatrix.from_columns([pool[c] for c in chosen]))
            return
        cands = level_mask[i]
        for j, c in enumerate(chosen):
            cands &= buckets[c].get(pair_key[j][i], 0)
            if not cands:
                return
        while cands:
            low = cands & -cands
            w = low.bit_length() - 1
            cands ^= low
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(budget)
            chosen.append(w)
            rec(i + 1)
            chosen.pop()

    rec(0)
    group = AutGroup(tuple(found), "brute", {"nodes": nodes, "pool": len(pool)})
    for a in group:
        assert a.T @ L @ a == L
    return group
