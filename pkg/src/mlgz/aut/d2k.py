"""Structured computation of G_Z for the D_{2k} models.

Every automorphism commutes with M, so it preserves B_1 = ker(M + id),
a rank-2 lattice spanned by b_1 = e_{mu-1} - e_mu and
b_2 = e_{mu-1} + e_{mu-3} + ... + e_1.  Restriction gives
G_Z -> Aut(B_1, I) with kernel {psi : psi = id on B_1}.  The lattice splits
as B_2 + Z a_2 with B_2 cyclic on a_1 and a_2 in B_1, so an automorphism
is fixed by the images of a_1 and a_2.  For each phi in Aut(B_1, I) the
lifts are found by trying every a_1-image of the right norm; the lifts of
the identity form the kernel, which must be the cyclic group {(-M)^j}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import InvariantViolation, NotD2k, NotPositiveDefinite, VerificationFailure
from ..linalg import IntMatrix, IntPoly, Vector, bilinear, hermite_rows, inverse_unimodular, krylov_matrix, smith_kernel
from ..milnor import MilnorLattice, ade_milnor
from .group import AutGroup
from .orlik import orlik_cyclic_search
from .shortvec import is_positive_definite, vectors_of_norm


def rank2_definite_automorphisms(gram: IntMatrix) -> list[IntMatrix]:
    """All A with A^T gram A = gram, for a positive definite 2x2 gram."""
    if gram.shape != (2, 2) or not is_positive_definite(gram):
        raise NotPositiveDefinite("expected a symmetric positive definite 2x2 Gram matrix")
    first = vectors_of_norm(gram, gram[0, 0])
    second = vectors_of_norm(gram, gram[1, 1])
    out = []
    for v in first:
        for w in second:
            if bilinear(gram, v, w) == gram[0, 1]:
                out.append(IntMatrix.from_columns([v, w]))
    return out


def rank2_definite_aut_order(gram: IntMatrix) -> int:
    return len(rank2_definite_automorphisms(gram))


def multiplicative_order(a: IntMatrix, limit: int = 10**4) -> int:
    ident = IntMatrix.identity(a.nrows)
    p = a
    for k in range(1, limit + 1):
        if p == ident:
            return k
        p = p @ a
    raise InvariantViolation(f"matrix order exceeds {limit}")


def quoted_b_vectors(mu: int) -> tuple[Vector, Vector]:
    """b_1 = e_{mu-1} - e_mu, b_2 = e_{mu-1} + e_{mu-3} + ... + e_1 (1-based names)."""
    b1 = [0] * mu
    b1[mu - 2], b1[mu - 1] = 1, -1
    b2 = [1 if (i % 2 == 0 and i <= mu - 2) else 0 for i in range(mu)]
    return tuple(b1), tuple(b2)


def _coords(b1: Vector, b2: Vector, v: Vector) -> tuple[int, int]:
    """Integer (x, y) with v = x b1 + y b2."""
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            det = b1[i] * b2[j] - b1[j] * b2[i]
            if det:
                x = Fraction(v[i] * b2[j] - v[j] * b2[i], det)
                y = Fraction(b1[i] * v[j] - b1[j] * v[i], det)
                if x.denominator != 1 or y.denominator != 1:
                    raise InvariantViolation(f"{v} is not in the lattice spanned by b_1, b_2")
                if any(x * p + y * q != c for p, q, c in zip(b1, b2, v)):
                    raise InvariantViolation(f"{v} is not in the span of b_1, b_2")
                return int(x), int(y)
    raise InvariantViolation("b_1 and b_2 are dependent")


@dataclass(frozen=True)
class D2kReport:
    k: int
    b1: Vector
    b2: Vector
    kernel_basis: tuple[Vector, ...]
    gram_B1: IntMatrix
    aut_B1_order: int
    cyclic_part_order: int
    image_order: int
    total_order: int
    generators: tuple[Vector, Vector]
    elements: tuple[IntMatrix, ...] = field(repr=False, default=())

    def group(self) -> AutGroup:
        return AutGroup(self.elements, "d2k", {"cyclic": self.cyclic_part_order, "image": self.image_order})


def d2k_analysis(ml: MilnorLattice, cross_check: bool = False) -> D2kReport:
    mu = ml.mu
    if mu < 4 or mu % 2:
        raise NotD2k(f"rank {mu} is not of the form 2k with k >= 2")
    ref = ade_milnor("D", mu)
    if (ml.L, ml.n) != (ref.L, ref.n):
        raise NotD2k("lattice is not the canonical D_{2k} model")
    k = mu // 2
    M, L, I = ml.M, ml.L, ml.I
    ident = IntMatrix.identity(mu)

    kernel = smith_kernel(M + ident)
    b1, b2 = quoted_b_vectors(mu)
    if len(kernel) != 2 or hermite_rows([b1, b2]) != kernel:
        raise InvariantViolation("b_1, b_2 do not span ker(M + id)")
    gram = IntMatrix([[bilinear(I, b1, b1), bilinear(I, b1, b2)], [bilinear(I, b2, b1), bilinear(I, b2, b2)]])
    if gram != IntMatrix([[4, 2], [2, 2 * k]]):
        raise InvariantViolation(f"unexpected Gram matrix on B_1: {gram}")
    aut_b1 = rank2_definite_automorphisms(gram)

    cyclic_order = multiplicative_order(-M)

    split = (IntPoly.monomial(mu - 1) + 1, IntPoly((1, 1)))
    dec = orlik_cyclic_search(ml, split)
    a1, a2 = dec.generators
    basis_inv = inverse_unimodular(dec.basis)
    a2_xy = _coords(b1, b2, a2)
    a1_images = vectors_of_norm(I, bilinear(I, a1, a1))

    def as_vec(xy):
        return tuple(xy[0] * p + xy[1] * q for p, q in zip(b1, b2))

    lifts: dict[int, list[IntMatrix]] = {}
    for idx, phi in enumerate(aut_b1):
        phi_a2 = as_vec(phi @ a2_xy)
        phi_b1 = as_vec(phi.col(0))
        phi_b2 = as_vec(phi.col(1))
        found = []
        for v in a1_images:
            images = krylov_matrix(M, v, mu - 1).columns() + [phi_a2]
            psi = IntMatrix.from_columns(images) @ basis_inv
            if psi.T @ L @ psi == L and psi @ b1 == phi_b1 and psi @ b2 == phi_b2:
                found.append(psi)
        lifts[idx] = found

    identity_idx = aut_b1.index(IntMatrix.identity(2))
    kernel_lifts = lifts[identity_idx]
    powers = {(-M) ** j for j in range(cyclic_order)}
    if set(kernel_lifts) != powers:
        raise InvariantViolation("automorphisms fixing B_1 are not exactly the powers of -M")
    image_order = sum(1 for found in lifts.values() if found)
    elements = tuple(psi for found in lifts.values() for psi in found)
    total = len(elements)
    if total != cyclic_order * image_order:
        raise InvariantViolation("|G_Z| != |kernel| * |image|")

    report = D2kReport(
        k=k,
        b1=b1,
        b2=b2,
        kernel_basis=tuple(kernel),
        gram_B1=gram,
        aut_B1_order=len(aut_b1),
        cyclic_part_order=cyclic_order,
        image_order=image_order,
        total_order=total,
        generators=(a1, a2),
        elements=elements,
    )
    if cross_check:
        from .brute import brute_force_aut

        brute = brute_force_aut(ml)
        if not brute.same_elements(report.group()):
            raise VerificationFailure([f"D{mu}: d2k gives {total}, brute force gives {brute.order}"])
    return report


def d2k_aut(ml: MilnorLattice) -> AutGroup:
    return d2k_analysis(ml).group()
