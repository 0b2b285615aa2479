import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlgz.cyclotomic import CycloFactorization
from mlgz.errors import BadDiagonal, EmptyFactorization, InvariantViolation, NotSymmetric, NotUnimodular, UnsupportedFamily
from mlgz.linalg import IntMatrix, char_poly, det_exact, hermite_rows, smith_kernel
from mlgz.milnor import (
    ade_milnor,
    companion_module,
    coxeter_matrix,
    dynkin_gram,
    make_from_seifert,
    reflection_matrix,
    suspend,
)

ADE = [("A", m) for m in range(1, 11)] + [("D", m) for m in range(4, 11)] + [("E", 6), ("E", 7), ("E", 8)]


def random_seifert(rng, n):
    """Unimodular L: a lower unitriangular core conjugated by a random unimodular P."""
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = rng.choice((1, -1))
        for j in range(i):
            rows[i][j] = rng.randint(-2, 2)
    core = IntMatrix(rows)
    p = IntMatrix.identity(n)
    for _ in range(rng.randint(0, 6)):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            e = IntMatrix.identity(n).tolist()
            e[i][j] = rng.randint(-2, 2)
            p = p @ IntMatrix(e)
    return p.T @ core @ p


class TestConventions:
    @pytest.mark.parametrize("family,mu", ADE)
    def test_ade_invariants(self, family, mu):
        ml = ade_milnor(family, mu)
        ml.validate(check_finite_order=True)
        assert ml.I == dynkin_gram(family, mu)
        assert all(ml.L[i, i] == -1 for i in range(mu))
        assert all(ml.L[i, j] == 0 for i in range(mu) for j in range(i + 1, mu))

    @pytest.mark.parametrize("family,mu", ADE)
    def test_coxeter_is_monodromy(self, family, mu):
        ml = ade_milnor(family, mu)
        assert coxeter_matrix(ml.I) == ml.M

    @pytest.mark.parametrize(
        "family,mu,charpoly",
        [("A", 5, "Phi6*Phi3*Phi2"), ("D", 4, "Phi6*Phi2^2"), ("D", 5, "Phi8*Phi2"), ("E", 6, "Phi12*Phi3"),
         ("E", 7, "Phi18*Phi2"), ("E", 8, "Phi30")],
    )
    def test_known_spectra(self, family, mu, charpoly):
        assert ade_milnor(family, mu).factorization().render() == charpoly

    def test_reflection_is_involution(self):
        I = dynkin_gram("E", 6)
        for e in range(6):
            s = reflection_matrix(I, e)
            assert s @ s == IntMatrix.identity(6)
            assert s.T @ I @ s == I

    def test_reflection_errors(self):
        with pytest.raises(NotSymmetric):
            reflection_matrix(IntMatrix([[2, 1], [0, 2]]), 0)
        with pytest.raises(BadDiagonal):
            reflection_matrix(IntMatrix([[2, 1], [1, 3]]), 1)

    def test_unsupported(self):
        with pytest.raises(UnsupportedFamily):
            dynkin_gram("E", 9)
        with pytest.raises(UnsupportedFamily):
            dynkin_gram("D", 3)

    def test_rejects_non_unimodular(self):
        with pytest.raises(NotUnimodular):
            make_from_seifert(IntMatrix([[2, 0], [1, 1]]), 2)


class TestD4Kernel:
    def test_kernel_of_m_plus_one(self):
        ml = ade_milnor("D", 4)
        ker = smith_kernel(ml.M + IntMatrix.identity(4))
        # e3 - e4 and e3 + e1, with 1-based names
        quoted = [(0, 0, 1, -1), (1, 0, 1, 0)]
        assert ker == hermite_rows(quoted)
        assert ker == [(1, 0, 0, 1), (0, 0, 1, -1)]


class TestSuspension:
    @pytest.mark.parametrize("family,mu", ADE)
    def test_suspension_signs(self, family, mu):
        ml = ade_milnor(family, mu)
        s1 = suspend(ml)
        assert s1.M == -ml.M and s1.L == ml.L * (-1) ** ml.n and s1.n == ml.n + 1
        s2 = suspend(s1)
        assert (s2.L, s2.M, s2.I) == (-ml.L, ml.M, -ml.I)
        s4 = suspend(suspend(s2))
        assert (s4.L, s4.M, s4.I) == (ml.L, ml.M, ml.I)

    @given(st.integers(0, 10**9), st.integers(1, 6), st.integers(0, 5))
    @settings(max_examples=60, deadline=None)
    def test_random_seifert(self, seed, n, parity):
        rng = random.Random(seed)
        L = random_seifert(rng, n)
        assert det_exact(L) in (1, -1)
        ml = make_from_seifert(L, parity)
        s = suspend(ml)
        assert s.M == -ml.M
        assert s.L == (-1) ** parity * ml.L


class TestModules:
    def test_companion_module(self):
        mod = companion_module(CycloFactorization.from_orders([12, 3]))
        assert mod.mu == 6
        assert char_poly(mod.M) == mod.factorization.expand()

    def test_companion_empty(self):
        with pytest.raises(EmptyFactorization):
            companion_module(CycloFactorization.from_orders([]))

    def test_validate_catches_tampering(self):
        ml = ade_milnor("A", 3)
        bad = type(ml)(ml.n, ml.L, ml.M @ ml.M, ml.I)
        with pytest.raises(InvariantViolation):
            bad.validate()
