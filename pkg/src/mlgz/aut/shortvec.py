"""Exact short-vector enumeration for definite integral forms.

Fincke-Pohst style recursion over the completed-square decomposition
Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2, carried out in rationals,
so bounds are exact integer intervals.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from ..errors import IndefiniteForm, NotPositiveDefinite
from ..linalg import IntMatrix, Vector, det_exact


def leading_minors(g: IntMatrix) -> list[int]:
    return [det_exact(g.submatrix(range(k), range(k))) for k in range(1, g.nrows + 1)]


def is_positive_definite(g: IntMatrix) -> bool:
    return g.is_symmetric() and all(d > 0 for d in leading_minors(g))


def definite_form(g: IntMatrix) -> IntMatrix:
    """Return g or -g, whichever is positive definite; IndefiniteForm otherwise."""
    if not g.is_symmetric():
        raise IndefiniteForm("form is not symmetric")
    minors = leading_minors(g)
    if all(d > 0 for d in minors):
        return g
    if all((d > 0) if k % 2 == 0 else (d < 0) for k, d in enumerate(minors, start=1)):
        return -g
    raise IndefiniteForm(f"leading minors {minors} are neither all positive nor alternating")


def _completed_square(g: IntMatrix) -> list[list[Fraction]]:
    n = g.nrows
    q = [[Fraction(x) for x in row] for row in g.rows]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _int_range(center: Fraction, radius_sq: Fraction):
    """Integers x with (x - center)^2 <= radius_sq, ascending."""
    s = math.isqrt(radius_sq.numerator // radius_sq.denominator) + 1
    base = math.floor(center)
    for x in range(base - s, base + s + 2):
        if (x - center) ** 2 <= radius_sq:
            yield x


def short_vectors(g: IntMatrix, bound: int) -> list[tuple[int, Vector]]:
    """All nonzero x with x^T g x <= bound, as (norm, x) pairs.

    g must be positive definite.  Output is sorted by (norm, x).
    """
    return list(_short_vectors(g, bound))


@lru_cache(maxsize=64)
def _short_vectors(g: IntMatrix, bound: int) -> tuple[tuple[int, Vector], ...]:
    if not is_positive_definite(g):
        raise NotPositiveDefinite("short vector enumeration needs a positive definite form")
    n = g.nrows
    q = _completed_square(g)
    out = []
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        if i < 0:
            if any(x):
                v = tuple(x)
                norm = sum(a * b for a, b in zip(v, g @ v))
                out.append((norm, v))
            return
        center = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        for xi in _int_range(center, remaining / q[i][i]):
            x[i] = xi
            rec(i - 1, remaining - q[i][i] * (xi - center) ** 2)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    out.sort()
    return tuple(out)


def vectors_of_norm(g: IntMatrix, norm: int) -> list[Vector]:
    return [v for nv, v in _short_vectors(g, norm) if nv == norm]
