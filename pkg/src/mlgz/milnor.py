"""Milnor lattice models: Seifert form, monodromy and intersection form.

Conventions: matrices act on column vectors, a bilinear form B is
evaluated as B(a, b) = a^T B b, and an automorphism A preserves B when
A^T B A == B.  From L(M a, b) = (-1)^(n+1) L(b, a) one gets

    M = (-1)^(n+1) (L^T)^(-1) L,     I = -L + (-1)^(n+1) L^T.

ADE models live at n = 4, where I is the positive definite root lattice
Gram matrix and L is lower triangular with -1 on the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .cyclotomic import CycloFactorization, cyclotomic_factor
from .errors import (
    BadDiagonal,
    EmptyFactorization,
    InvariantViolation,
    NotCyclotomicProduct,
    NotSymmetric,
    NotUnimodular,
    UnsupportedFamily,
)
from .linalg import IntMatrix, Vector, char_poly, companion, det_exact, inverse_unimodular, krylov_matrix

ADE_PARITY = 4


@dataclass(frozen=True)
class MilnorLattice:
    n: int
    L: IntMatrix
    M: IntMatrix
    I: IntMatrix
    name: str = ""

    @property
    def mu(self) -> int:
        return self.L.nrows

    def validate(self, check_finite_order: bool = False) -> None:
        """Assert every structural invariant; raise InvariantViolation otherwise."""
        L, M, I, n = self.L, self.M, self.I, self.n
        sign = (-1) ** (n + 1)
        checks = [
            ("det L = +-1", det_exact(L) in (1, -1)),
            ("M^T L = (-1)^(n+1) L^T", M.T @ L == sign * L.T),
            ("I = -L + (-1)^(n+1) L^T", I == -L + sign * L.T),
            ("I^T = (-1)^n I", I.T == (-1) ** n * I),
            ("M^T L M = L", M.T @ L @ M == L),
            ("M^T I M = I", M.T @ I @ M == I),
        ]
        for label, ok in checks:
            if not ok:
                raise InvariantViolation(f"{self.name or 'lattice'}: {label} fails")
        if check_finite_order:
            try:
                self.factorization()
            except NotCyclotomicProduct as exc:
                raise InvariantViolation(f"monodromy is not quasiunipotent: {exc}") from None

    def char_poly(self):
        return char_poly(self.M)

    @cached_property
    def _factors(self) -> CycloFactorization:
        return cyclotomic_factor(self.char_poly())

    def factorization(self) -> CycloFactorization:
        """Cyclotomic factorization of the monodromy characteristic polynomial."""
        return self._factors

    def preserves(self, A: IntMatrix) -> bool:
        return A.T @ self.L @ A == self.L


@dataclass(frozen=True)
class MonodromyModule:
    """A lattice with monodromy and a certified cyclic generator (no Seifert form)."""

    M: IntMatrix
    cyclic_gen: Vector
    factorization: CycloFactorization

    @property
    def mu(self) -> int:
        return self.M.nrows

    def validate(self) -> None:
        if det_exact(krylov_matrix(self.M, self.cyclic_gen)) not in (1, -1):
            raise InvariantViolation("cyclic generator does not span the lattice")
        if char_poly(self.M) != self.factorization.expand():
            raise InvariantViolation("char poly does not match the factorization")


def monodromy_from_seifert(L: IntMatrix, n: int) -> IntMatrix:
    return (-1) ** (n + 1) * (inverse_unimodular(L.T) @ L)


def intersection_from_seifert(L: IntMatrix, n: int) -> IntMatrix:
    return -L + (-1) ** (n + 1) * L.T


def make_from_seifert(L: IntMatrix, n: int, name: str = "", check_finite_order: bool = False) -> MilnorLattice:
    if not L.is_square or det_exact(L) not in (1, -1):
        raise NotUnimodular("Seifert matrix must be square with determinant +-1")
    ml = MilnorLattice(n, L, monodromy_from_seifert(L, n), intersection_from_seifert(L, n), name)
    ml.validate(check_finite_order)
    return ml


def dynkin_gram(family: str, mu: int) -> IntMatrix:
    """Gram matrix of the ADE root basis.

    A: the path e_1 - ... - e_mu.  D: the path e_1 - ... - e_{mu-1} with
    e_mu attached to e_{mu-2}.  E: the path e_1 - ... - e_{mu-1} with e_mu
    attached to e_3.
    """
    family = family.upper()
    if family == "A" and mu >= 1:
        edges = [(i, i + 1) for i in range(mu - 1)]
    elif family == "D" and mu >= 4:
        edges = [(i, i + 1) for i in range(mu - 2)] + [(mu - 3, mu - 1)]
    elif family == "E" and mu in (6, 7, 8):
        edges = [(i, i + 1) for i in range(mu - 2)] + [(2, mu - 1)]
    else:
        raise UnsupportedFamily(f"no ADE model for family={family!r}, mu={mu}")
    g = [[2 if i == j else 0 for j in range(mu)] for i in range(mu)]
    for i, j in edges:
        g[i][j] = g[j][i] = -1
    return IntMatrix(g)


def seifert_from_gram(gram: IntMatrix) -> IntMatrix:
    """Lower triangular L with -1 diagonal and L[j][i] = -gram[i][j] for i < j."""
    mu = gram.nrows
    return IntMatrix(
        [[-1 if i == j else (-gram[j, i] if j < i else 0) for j in range(mu)] for i in range(mu)]
    )


def ade_milnor(family: str, mu: int) -> MilnorLattice:
    """Canonical ADE model at n = 4."""
    gram = dynkin_gram(family, mu)
    ml = make_from_seifert(seifert_from_gram(gram), ADE_PARITY, name=f"{family.upper()}{mu}",
                           check_finite_order=True)
    assert ml.I == gram
    return ml


def companion_module(f: CycloFactorization) -> MonodromyModule:
    if not f.factors:
        raise EmptyFactorization("companion model needs at least one factor")
    M = companion(f.expand())
    gen = (1,) + (0,) * (M.nrows - 1)
    mod = MonodromyModule(M, gen, f)
    mod.validate()
    return mod


def suspend(ml: MilnorLattice) -> MilnorLattice:
    """Pass from f to f + x_{n+1}^2: L -> (-1)^n L, M -> -M."""
    L2 = (-1) ** ml.n * ml.L
    out = make_from_seifert(L2, ml.n + 1, name=ml.name)
    if out.M != -ml.M:
        raise InvariantViolation("suspension must negate the monodromy")
    return out


def _check_diag(I: IntMatrix, e: int) -> None:
    if not I.is_symmetric():
        raise NotSymmetric("intersection matrix must be symmetric")
    if I[e, e] != 2:
        raise BadDiagonal(f"I[{e}][{e}] = {I[e, e]}, expected 2")


def reflection_matrix(I: IntMatrix, e: int) -> IntMatrix:
    """Matrix of x -> x - I(x, e_e) e_e (0-based index e)."""
    _check_diag(I, e)
    mu = I.nrows
    rows = [[int(r == j) for j in range(mu)] for r in range(mu)]
    for j in range(mu):
        rows[e][j] -= I[j, e]
    return IntMatrix(rows)


def coxeter_matrix(I: IntMatrix) -> IntMatrix:
    """s_{e_1} s_{e_2} ... s_{e_mu}, so s_{e_mu} is applied first."""
    mu = I.nrows
    for e in range(mu):
        _check_diag(I, e)
    out = IntMatrix.identity(mu)
    for e in range(mu):
        out = out @ reflection_matrix(I, e)
    return out
