"""Automorphisms as polynomials in the monodromy.

With a cyclic generator a_1, anything commuting with M is c(M) for a
unique integer polynomial c of degree < mu.  If moreover A preserves L,
then on each eigenline c(lambda) has absolute value 1, and c(lambda) lies in
Z[lambda]; the units of absolute value 1 there are exactly +-lambda^j.  So
modulo each Phi_m, c is congruent to eps * x^j.  Enumerating these residues
and gluing them by the Chinese remainder theorem over Q recovers every
candidate; the integral ones that preserve L are the group.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from ..cyclotomic import CycloFactorization, cyclotomic_poly, signed_power_group_order
from ..errors import InfiniteOrder, InvariantViolation, NoCyclicCertificate, NotCyclotomicProduct, RepeatedFactor
from ..linalg import IntMatrix, IntPoly, det_exact, krylov_matrix, poly_eval_matrix
from ..milnor import MilnorLattice
from .group import AutGroup

QPoly = list  # Fraction coefficients, lowest degree first


def _trim(p: QPoly) -> QPoly:
    while p and p[-1] == 0:
        p.pop()
    return p


def _qmul(a: QPoly, b: QPoly) -> QPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _qsub(a: QPoly, b: QPoly) -> QPoly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _qdivmod(a: QPoly, b: QPoly) -> tuple[QPoly, QPoly]:
    a = list(a)
    if len(a) < len(b):
        return [], _trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for i, y in enumerate(b):
                a[k + i] -= c * y
    return _trim(q), _trim(a[: len(b) - 1])


def _qinverse_mod(a: QPoly, m: QPoly) -> QPoly:
    """u with u * a == 1 modulo m (a, m coprime over Q)."""
    r0, r1 = list(m), _qdivmod(a, m)[1]
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, _qmul(q, s1))
    if len(r0) != 1:
        raise ArithmeticError("polynomials are not coprime")
    inv = Fraction(1) / r0[0]
    # invariant: r_i == s_i * a (mod m)
    return _qdivmod([c * inv for c in s0], m)[1]


def _as_q(p: IntPoly) -> QPoly:
    return [Fraction(c) for c in p.coeffs]


def crt_idempotents(f: CycloFactorization) -> list[QPoly]:
    """e_m with e_m == 1 mod Phi_m and e_m == 0 mod the other factors."""
    total = _as_q(f.expand())
    out = []
    for m, _ in f.factors:
        phi = _as_q(cyclotomic_poly(m))
        cof = _qdivmod(total, phi)[0]
        u = _qinverse_mod(cof, phi)
        e = _qdivmod(_qmul(u, cof), total)[1]
        out.append(e)
    return out


def unit_residues(m: int) -> list[IntPoly]:
    """eps * x^j mod Phi_m for eps = +-1 and 0 <= j < m (with repeats for m <= 2)."""
    phi = cyclotomic_poly(m)
    out = []
    for eps in (1, -1):
        for j in range(m):
            out.append(IntPoly.monomial(j, eps) % phi)
    return out


def is_cyclic_generator(M: IntMatrix, v: Sequence[int]) -> bool:
    return det_exact(krylov_matrix(M, v)) in (1, -1)


def crt_unit_aut(ml: MilnorLattice, gen: Sequence[int] | None = None) -> AutGroup:
    """G_Z via residues of +-x^j on each cyclotomic factor.

    Needs a squarefree cyclotomic char poly and a cyclic generator `gen`
    (searched for with the Orlik search if not given).
    """
    try:
        f = ml.factorization()
    except NotCyclotomicProduct as exc:
        raise InfiniteOrder(str(exc)) from None
    if not f.is_squarefree:
        raise RepeatedFactor(f"characteristic polynomial {f.render()} has a repeated factor")
    M, L = ml.M, ml.L
    if gen is None:
        from .orlik import find_cyclic_generator

        gen = find_cyclic_generator(ml)
    gen = tuple(gen)
    if not is_cyclic_generator(M, gen):
        raise NoCyclicCertificate(f"{gen} is not a cyclic generator")

    total = _as_q(f.expand())
    idem = crt_idempotents(f)
    # per factor: the distinct residues, each multiplied into its idempotent
    lifted = []
    raw = 1
    for (m, _), e in zip(f.factors, idem):
        residues = unit_residues(m)
        raw *= len(residues)
        distinct = list(dict.fromkeys(residues))
        lifted.append([_qdivmod(_qmul(_as_q(r), e), total)[1] for r in distinct])
    # clear denominators so the gluing loop runs on ints
    denom = math.lcm(*(c.denominator for parts in lifted for part in parts for c in part))
    scaled = [
        [tuple(int(part[i] * denom) if i < len(part) else 0 for i in range(ml.mu)) for part in parts]
        for parts in lifted
    ]

    integral = 0
    found = []
    for combo in itertools.product(*scaled):
        coeffs = [sum(col) for col in zip(*combo)]
        if any(c % denom for c in coeffs):
            continue
        integral += 1
        A = poly_eval_matrix(IntPoly(c // denom for c in coeffs), M)
        if A.T @ L @ A == L:
            found.append(A)
    return AutGroup(tuple(found), "crt", {"candidates": raw, "integral": integral})


def signed_monodromy_group(ml: MilnorLattice) -> AutGroup:
    """{+-M^k}: always a subgroup of G_Z, equal to it where the classification applies."""
    try:
        f = ml.factorization()
    except NotCyclotomicProduct as exc:
        raise InfiniteOrder(str(exc)) from None
    N = f.order
    M = ml.M
    ident = IntMatrix.identity(ml.mu)
    if M**N != ident:
        raise InfiniteOrder("monodromy has a nontrivial unipotent part")
    elems = []
    P = ident
    for _ in range(N):
        elems.extend((P, -P))
        P = P @ M
    group = AutGroup(tuple(elems), "signed-power")
    for a in group:
        if a.T @ ml.L @ a != ml.L:
            raise InvariantViolation("a signed monodromy power fails to preserve L")
    expected = signed_power_group_order(f)
    if group.order != expected:
        raise InvariantViolation(f"|+-M^k| = {group.order}, but the spectrum predicts {expected}")
    return group
