"""Exact integer matrices and polynomials.

Everything here works on Python ints (arbitrary precision); there is no
floating point anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonSquare, NotUnimodular

Vector = tuple[int, ...]


class IntMatrix:
    """Immutable dense integer matrix, row-major."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # constructors
    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(((1 if i == j else 0) for j in range(n)) for i in range(n))

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> IntMatrix:
        if ncols is None:
            ncols = nrows
        return cls(((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> IntMatrix:
        if not columns:
            return cls((), 0)
        return cls(zip(*columns), len(columns))

    # shape
    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    @property
    def is_square(self) -> bool:
        return len(self.rows) == self.ncols

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self.rows[i][j]
        return self.rows[idx]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(zip(*self.rows), len(self.rows)) if self.rows else IntMatrix((), 0)

    def flat(self) -> Vector:
        return tuple(x for r in self.rows for x in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix(((self.rows[i][j] for j in cols) for i in rows), len(cols))

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.T

    # arithmetic
    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return IntMatrix(
                ((sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows),
                other.ncols,
            )
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            (tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(((-x for x in r) for r in self.rows), self.ncols)

    def __mul__(self, k: int) -> IntMatrix:
        if isinstance(k, IntMatrix):
            return NotImplemented
        return IntMatrix(((k * x for x in r) for r in self.rows), self.ncols)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntMatrix:
        _require_square(self)
        if k < 0:
            return inverse_unimodular(self) ** (-k)
        result = IntMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"


class IntPoly:
    """Univariate integer polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls((0,) * k + (c,))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other) -> IntPoly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> IntPoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> IntPoly:
        return _as_poly(other) - self

    def __mul__(self, other) -> IntPoly:
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        result = IntPoly((1,))
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, divisor) -> tuple[IntPoly, IntPoly]:
        """Division by a divisor with leading coefficient +-1 (exact over Z)."""
        divisor = _as_poly(divisor)
        lead = divisor.leading
        if lead not in (1, -1):
            raise ValueError("integer polynomial division needs a unit leading coefficient")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntPoly(), IntPoly(rem)
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            q = rem[k] * lead
            quot[k - dd] = q
            if q:
                for i, c in enumerate(divisor.coeffs):
                    rem[k - dd + i] -= q * c
        return IntPoly(quot), IntPoly(rem[:dd])

    def __floordiv__(self, divisor) -> IntPoly:
        return divmod(self, divisor)[0]

    def __mod__(self, divisor) -> IntPoly:
        return divmod(self, divisor)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("t" if k == 1 else f"t^{k}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += sign + body
        return out


def _as_poly(p) -> IntPoly:
    if isinstance(p, IntPoly):
        return p
    if isinstance(p, int):
        return IntPoly((p,))
    raise TypeError(f"cannot use {type(p).__name__} as IntPoly")


def _require_square(m: IntMatrix) -> None:
    if not m.is_square:
        raise NonSquare(f"expected a square matrix, got shape {m.shape}")


def det_exact(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    _require_square(m)
    n = m.nrows
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                q, r = divmod(num, prev)
                assert r == 0, "Bareiss division must be exact"
                a[i][j] = q
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    _require_square(m)
    d = det_exact(m)
    if d not in (1, -1):
        raise NotUnimodular(f"determinant is {d}, not +-1")
    n = m.nrows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(m.rows)]
    for k in range(n):
        piv = next(i for i in range(k, n) if a[i][k] != 0)
        a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    out = []
    for r in a:
        row = []
        for x in r[n:]:
            assert x.denominator == 1
            row.append(x.numerator)
        out.append(row)
    return IntMatrix(out)


def char_poly(m: IntMatrix) -> IntPoly:
    """det(tI - m), via Faddeev-LeVerrier with checked exact divisions."""
    _require_square(m)
    n = m.nrows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    ident = IntMatrix.identity(n)
    aux = IntMatrix.zeros(n)
    for k in range(1, n + 1):
        aux = m @ aux + ident * coeffs[n - k + 1]
        am = m @ aux
        tr = sum(am[i, i] for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact"
        coeffs[n - k] = q
    return IntPoly(coeffs)


def poly_eval_matrix(p: IntPoly, m: IntMatrix) -> IntMatrix:
    """p(m) by Horner's rule."""
    _require_square(m)
    n = m.nrows
    acc = IntMatrix.zeros(n)
    ident = IntMatrix.identity(n)
    for c in reversed(p.coeffs):
        acc = acc @ m + ident * c
    return acc


def companion(p: IntPoly) -> IntMatrix:
    """Companion matrix of a monic p; e_1 is a cyclic vector and M e_i = e_{i+1}."""
    if not p.is_monic or p.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    n = p.degree
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -p[i]
    return IntMatrix(rows)


def krylov_matrix(m: IntMatrix, v: Sequence[int], k: int | None = None) -> IntMatrix:
    """Matrix with columns v, m v, ..., m^(k-1) v."""
    if k is None:
        k = m.nrows
    cols = []
    cur = tuple(v)
    for _ in range(k):
        cols.append(cur)
        cur = m @ cur
    return IntMatrix.from_columns(cols)


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (D, U, V) with U @ m @ V == D diagonal and U, V unimodular.

    The diagonal entries are nonnegative and each divides the next.
    """
    rows, cols = m.shape
    a = [list(r) for r in m.rows]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):
        a[dst] = [x - f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for r in a:
            r[dst] -= f * r[src]
        for r in v:
            r[dst] -= f * r[src]

    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: fold any offending row into the pivot row
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                 if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return IntMatrix(a, cols), IntMatrix(u, rows), IntMatrix(v, cols)


def hermite_rows(vectors: Sequence[Sequence[int]]) -> list[Vector]:
    """Row-style Hermite normal form of the lattice spanned by `vectors`.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot), zero rows are dropped.
    """
    a = [list(v) for v in vectors]
    if not a:
        return []
    ncols = len(a[0])
    out_rows = 0
    for j in range(ncols):
        # gcd-eliminate column j among rows out_rows..
        while True:
            live = [i for i in range(out_rows, len(a)) if a[i][j]]
            if not live:
                break
            piv = min(live, key=lambda i: abs(a[i][j]))
            a[out_rows], a[piv] = a[piv], a[out_rows]
            others = [i for i in range(out_rows + 1, len(a)) if a[i][j]]
            if not others:
                break
            for i in others:
                f = a[i][j] // a[out_rows][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[out_rows])]
        if out_rows < len(a) and a[out_rows][j]:
            if a[out_rows][j] < 0:
                a[out_rows] = [-x for x in a[out_rows]]
            p = a[out_rows][j]
            for i in range(out_rows):
                f = a[i][j] // p
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[out_rows])]
            out_rows += 1
    return [tuple(r) for r in a[:out_rows]]


def smith_kernel(m: IntMatrix) -> list[Vector]:
    """Hermite-reduced basis of the integer kernel {v : m v = 0}.

    The kernel comes out of the Smith transform already saturated.
    """
    d, _, v = smith_normal_form(m)
    rank = sum(1 for i in range(min(d.shape)) if d[i, i] != 0)
    basis = [v.col(j) for j in range(rank, m.ncols)]
    return hermite_rows(basis)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def bilinear(form: IntMatrix, a: Sequence[int], b: Sequence[int]) -> int:
    """a^T form b."""
    return dot(a, form @ tuple(b))
