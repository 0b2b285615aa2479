from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mlgz.errors import NonSquare, NotUnimodular
from mlgz.linalg import (
    IntMatrix,
    IntPoly,
    char_poly,
    companion,
    det_exact,
    hermite_rows,
    inverse_unimodular,
    krylov_matrix,
    poly_eval_matrix,
    smith_kernel,
    smith_normal_form,
)


def square(max_n=5, lo=-6, hi=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    ).map(IntMatrix)


def leibniz_det(m):
    n = m.nrows
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i, j in enumerate(perm):
            prod *= m[i, j]
        total += (-1) ** inv * prod
    return total


def random_unimodular(draw_ints, n):
    # product of elementary matrices
    a = IntMatrix.identity(n)
    for i, j, c in draw_ints:
        if i % n != j % n:
            rows = IntMatrix.identity(n).tolist()
            rows[i % n][j % n] = c
            a = a @ IntMatrix(rows)
    return a


class TestIntMatrix:
    def test_basic_shape_and_access(self):
        m = IntMatrix([[1, 2, 3], [4, 5, 6]])
        assert m.shape == (2, 3)
        assert m[1, 2] == 6
        assert m.col(1) == (2, 5)
        assert m.T.shape == (3, 2)
        assert m.flat() == (1, 2, 3, 4, 5, 6)

    def test_ragged_rows_rejected(self):
        with pytest.raises(ValueError):
            IntMatrix([[1, 2], [3]])

    def test_matrix_vector_product(self):
        m = IntMatrix([[0, -1], [1, 0]])
        assert m @ (1, 0) == (0, 1)
        assert (m @ m) == -IntMatrix.identity(2)
        assert m**4 == IntMatrix.identity(2)
        assert m**-1 == m**3

    def test_hashable_and_equal(self):
        a = IntMatrix([[1, 2], [3, 4]])
        b = IntMatrix([[1, 2], [3, 4]])
        assert a == b and hash(a) == hash(b)
        assert len({a, b, -a}) == 2


class TestDeterminant:
    @given(square())
    @settings(max_examples=150, deadline=None)
    def test_bareiss_matches_leibniz(self, m):
        assert det_exact(m) == leibniz_det(m)

    def test_non_square(self):
        with pytest.raises(NonSquare):
            det_exact(IntMatrix([[1, 2, 3]]))

    def test_known_values(self):
        assert det_exact(IntMatrix([[2, -1], [-1, 2]])) == 3
        assert det_exact(IntMatrix([[0, 1], [1, 0]])) == -1
        assert det_exact(IntMatrix([[1, 2], [2, 4]])) == 0


class TestInverse:
    @given(st.integers(1, 5), st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(-3, 3)),
                                       max_size=12))
    @settings(max_examples=100, deadline=None)
    def test_inverse_of_unimodular(self, n, ops):
        a = random_unimodular(ops, n)
        inv = inverse_unimodular(a)
        assert a @ inv == IntMatrix.identity(n)
        assert inv @ a == IntMatrix.identity(n)

    def test_rejects_det_two(self):
        with pytest.raises(NotUnimodular):
            inverse_unimodular(IntMatrix([[2, 0], [0, 1]]))


class TestCharPoly:
    @given(square(max_n=5, lo=-4, hi=4))
    @settings(max_examples=80, deadline=None)
    def test_matches_interpolation_of_det(self, m):
        # det(tI - m) sampled at n + 1 points, Lagrange interpolation as the oracle
        n = m.nrows
        pts = list(range(n + 1))
        vals = [det_exact(IntMatrix.identity(n) * t - m) for t in pts]
        p = char_poly(m)
        assert p.degree == n and p.is_monic
        for t, v in zip(pts, vals):
            assert p(t) == v
        # and a point outside the sample
        t = n + 7
        lagrange = sum(
            Fraction(v) * Fraction(
                eval_prod([t - pj for pj in pts if pj != pi]), eval_prod([pi - pj for pj in pts if pj != pi])
            )
            for pi, v in zip(pts, vals)
        )
        assert p(t) == lagrange

    @given(square(max_n=4, lo=-3, hi=3))
    @settings(max_examples=50, deadline=None)
    def test_cayley_hamilton(self, m):
        assert poly_eval_matrix(char_poly(m), m) == IntMatrix.zeros(m.nrows)

    def test_companion_has_its_polynomial(self):
        p = IntPoly((1, 1, 1))
        c = companion(p)
        assert char_poly(c) == p
        assert c @ (1, 0) == (0, 1)

    def test_krylov_of_companion_is_identity(self):
        c = companion(IntPoly((1, 0, 0, 1)))
        assert krylov_matrix(c, (1, 0, 0)) == IntMatrix.identity(3)


def eval_prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


class TestIntPoly:
    def test_arithmetic(self):
        x = IntPoly.x()
        assert (x + 1) * (x - 1) == x**2 - 1
        q, r = divmod(x**3 + 1, x + 1)
        assert q == x**2 - x + 1 and r.is_zero()
        assert IntPoly((0,)).degree == -1

    def test_str(self):
        assert str(IntPoly((1, 1, 1))) == "t^2+t+1"
        assert str(IntPoly((1, 0, 0, 1))) == "t^3+1"


def sympy_mat(m):
    return sympy.Matrix(m.tolist())


class TestSmith:
    @given(st.integers(1, 4), st.integers(1, 4), st.data())
    @settings(max_examples=80, deadline=None)
    def test_snf_against_sympy(self, r, c, data):
        rows = data.draw(st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r))
        m = IntMatrix(rows)
        d, u, v = smith_normal_form(m)
        assert u @ m @ v == d
        assert abs(det_exact(u)) == 1 and abs(det_exact(v)) == 1
        diag = [d[i, i] for i in range(min(r, c))]
        assert all(d[i, j] == 0 for i in range(r) for j in range(c) if i != j)
        nz = [x for x in diag if x]
        assert all(x > 0 for x in nz)
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
        from sympy.matrices.normalforms import smith_normal_form as sympy_snf

        ref = sympy_snf(sympy_mat(m), domain=sympy.ZZ)
        ref_diag = [abs(int(ref[i, i])) for i in range(min(r, c))]
        assert [abs(x) for x in diag] == ref_diag

    @given(st.integers(1, 4), st.integers(1, 5), st.data())
    @settings(max_examples=80, deadline=None)
    def test_kernel_against_sympy(self, r, c, data):
        rows = data.draw(st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r))
        m = IntMatrix(rows)
        ker = smith_kernel(m)
        assert len(ker) == len(sympy_mat(m).nullspace())
        for v in ker:
            assert m @ v == (0,) * r
        if ker:
            # saturated: the kernel basis extends to a unimodular basis (gcd of maximal minors is 1)
            snf_d, _, _ = smith_normal_form(IntMatrix(ker))
            assert all(snf_d[i, i] == 1 for i in range(len(ker)))
        assert hermite_rows(ker) == ker

    def test_d4_style_kernel(self):
        m = IntMatrix([[1, 0, 0, -1], [0, 1, 0, 0]])
        assert smith_kernel(m) == [(1, 0, 0, 1), (0, 0, 1, 0)]

    def test_hermite_rows_normal_form(self):
        h = hermite_rows([(2, 4), (1, 3)])
        assert h == [(1, 1), (0, 2)]
