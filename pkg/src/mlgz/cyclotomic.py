"""Cyclotomic polynomials, Moebius function, power traces and the chain
condition search for spectra of finite-order monodromies."""

from __future__ import annotations

import math
import threading
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CapExceeded, NotCyclotomicProduct, NoWitness
from .linalg import IntPoly

CHAIN_SEARCH_CAP = 8


def factorize(m: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if m < 1:
        raise ValueError("expected a positive integer")
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def moebius(m: int) -> int:
    fac = factorize(m)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(m: int) -> int:
    result = m
    for p in factorize(m):
        result = result // p * (p - 1)
    return result


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, k) with q == p**k, k >= 1; None if q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    return next(iter(fac.items()))


_PHI_CACHE: dict[int, IntPoly] = {}
_PHI_LOCK = threading.Lock()


def cyclotomic_poly(m: int) -> IntPoly:
    """Phi_m, as (x^m - 1) divided exactly by the Phi_d for proper divisors d."""
    if m < 1:
        raise ValueError("cyclotomic index must be >= 1")
    cached = _PHI_CACHE.get(m)
    if cached is not None:
        return cached
    p = IntPoly.monomial(m) - 1
    for d in range(1, m):
        if m % d == 0:
            p, r = divmod(p, cyclotomic_poly(d))
            assert r.is_zero(), f"Phi_{d} does not divide x^{m}-1"
    with _PHI_LOCK:
        return _PHI_CACHE.setdefault(m, p)


@dataclass(frozen=True)
class CycloFactorization:
    """A product of cyclotomic polynomials, prod Phi_m ** mult.

    `factors` is kept sorted by decreasing m, which is also the rendering
    order (``Phi12*Phi3``).
    """

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        merged: Counter = Counter()
        for m, mult in self.factors:
            if m < 1 or mult < 1:
                raise ValueError(f"bad factor (m={m}, mult={mult})")
            merged[m] += mult
        object.__setattr__(self, "factors", tuple(sorted(merged.items(), reverse=True)))

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> CycloFactorization:
        """From a list of m values, repeated m meaning multiplicity."""
        return cls(tuple(Counter(orders).items()))

    @property
    def mu(self) -> int:
        return sum(mult * euler_phi(m) for m, mult in self.factors)

    @property
    def ord_set(self) -> frozenset[int]:
        return frozenset(m for m, _ in self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(mult == 1 for _, mult in self.factors)

    def multiplicity(self, m: int) -> int:
        return dict(self.factors).get(m, 0)

    @property
    def order(self) -> int:
        """Multiplicative order of any semisimple matrix with this spectrum."""
        return math.lcm(*self.ord_set) if self.factors else 1

    def expand(self) -> IntPoly:
        p = IntPoly((1,))
        for m, mult in self.factors:
            p = p * cyclotomic_poly(m) ** mult
        return p

    def orders(self) -> list[int]:
        return [m for m, mult in self.factors for _ in range(mult)]

    def render(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"Phi{m}" if mult == 1 else f"Phi{m}^{mult}" for m, mult in self.factors)

    def __str__(self):
        return self.render()


def cyclotomic_factor(p: IntPoly) -> CycloFactorization:
    """Recognize p as a product of cyclotomic polynomials."""
    if not p.is_monic:
        raise ValueError("expected a monic polynomial")
    if p[0] == 0:
        raise NotCyclotomicProduct(f"{p} vanishes at 0")
    rest = p
    found = []
    # phi(m) >= sqrt(m) for m > 6, so m <= max(6, deg^2) suffices
    bound = max(6, p.degree * p.degree)
    m = 1
    while rest.degree > 0 and m <= bound:
        if euler_phi(m) <= rest.degree:
            phi = cyclotomic_poly(m)
            while True:
                q, r = divmod(rest, phi)
                if not r.is_zero():
                    break
                rest = q
                found.append(m)
        m += 1
    if rest != IntPoly((1,)):
        raise NotCyclotomicProduct(f"{p} has a non-cyclotomic factor {rest}")
    return CycloFactorization.from_orders(found)


def trace_sum(f: CycloFactorization) -> int:
    """Sum of mult(m) * moebius(m): the trace of the monodromy itself."""
    return sum(mult * moebius(m) for m, mult in f.factors)


def power_traces(f: CycloFactorization, K: int) -> list[int]:
    """Traces t_1..t_K of the powers of a matrix with char poly f (Newton)."""
    if K < 1:
        raise ValueError("K must be >= 1")
    p = f.expand()
    n = p.degree
    a = p.coeffs  # a[n] == 1
    s = [0] * (K + 1)
    for k in range(1, K + 1):
        acc = 0
        for i in range(1, min(k - 1, n) + 1):
            acc += a[n - i] * s[k - i]
        if k <= n:
            acc += k * a[n - k]
        s[k] = -acc
    assert s[1] == trace_sum(f), "Newton identity disagrees with the Moebius trace"
    return s[1:]


def two_adic(m: int) -> tuple[int, int]:
    a = 0
    while m % 2 == 0:
        m //= 2
        a += 1
    return a, m


def exists_minus_id_power(orders: Iterable[int]) -> int | None:
    """Smallest k with lambda**k == -1 for every eigenvalue order, or None."""
    orders = set(orders)
    if not orders:
        raise ValueError("orders must be nonempty")
    vals = {two_adic(m)[0] for m in orders}
    if len(vals) != 1 or vals == {0}:
        return None
    return math.lcm(*orders) // 2


def signed_power_group_order(f: CycloFactorization) -> int:
    """|{+-M^k}| for a semisimple M with spectrum f."""
    n = f.order
    if f.factors and exists_minus_id_power(f.ord_set) is not None:
        return n
    return 2 * n


def acampo_check(f: CycloFactorization, n: int, mult: int) -> bool:
    """trace M^k == (-1)^(n+1) for 0 < k < mult."""
    if mult < 2:
        raise ValueError("multiplicity must be >= 2")
    want = (-1) ** (n + 1)
    return all(t == want for t in power_traces(f, mult - 1))


@dataclass(frozen=True)
class ChainWitness:
    """Sequences certifying the chain condition on a set of eigenvalue orders.

    Indices are 1-based. ``j_seq``, ``p_seq``, ``k_seq`` are indexed by
    i = 2..len(m_seq), so ``j_seq[0]`` is j(2).
    """

    m_seq: tuple[int, ...]
    j_seq: tuple[int, ...]
    p_seq: tuple[int, ...]
    k_seq: tuple[int, ...]
    i1: int
    i2: int

    def j(self, i: int) -> int:
        return self.j_seq[i - 2]

    def p(self, i: int) -> int:
        return self.p_seq[i - 2]

    def k(self, i: int) -> int:
        return self.k_seq[i - 2]

    def check(self, ord_set: Iterable[int] | None = None) -> None:
        """Raise AssertionError unless every witness invariant holds."""
        n = len(self.m_seq)
        if ord_set is not None:
            assert set(self.m_seq) == set(ord_set) and len(set(self.m_seq)) == n
        assert len(self.j_seq) == len(self.p_seq) == len(self.k_seq) == n - 1
        assert 1 <= self.i1 <= self.i2 <= n
        for i in range(2, n + 1):
            p, k, j = self.p(i), self.k(i), self.j(i)
            assert k >= 1 and prime_power(p) == (p, 1)
            assert self.m_seq[j - 1] == self.m_seq[i - 1] * p**k
            if self.i1 + 1 <= i <= self.i2:
                assert p == 2 and j == i - 1
            else:
                assert p >= 3 and 1 <= j < i


def _step(big: int, small: int) -> tuple[int, int] | None:
    if big % small:
        return None
    return prime_power(big // small)


def _complete(order: tuple[int, ...], i1: int, i2: int) -> ChainWitness | None:
    js, ps, ks = [], [], []
    for i in range(2, len(order) + 1):
        mi = order[i - 1]
        if i1 + 1 <= i <= i2:
            step = _step(order[i - 2], mi)
            if step is None or step[0] != 2:
                return None
            js.append(i - 1)
        else:
            for j in range(1, i):
                step = _step(order[j - 1], mi)
                if step is not None and step[0] >= 3:
                    js.append(j)
                    break
            else:
                return None
        ps.append(step[0])
        ks.append(step[1])
    return ChainWitness(order, tuple(js), tuple(ps), tuple(ks), i1, i2)


def iter_chain_witnesses(ord_set: Iterable[int]) -> Iterator[ChainWitness]:
    """All witnesses in canonical order.

    Orderings are visited lexicographically with larger m first; for each
    ordering the split (i1, i2) runs over i1 descending, then i2 descending.
    For a fixed ordering and split, each j(i) is the smallest admissible.
    """
    ords = sorted(set(ord_set), reverse=True)
    if not ords:
        raise ValueError("ord_set must be nonempty")
    if len(ords) > CHAIN_SEARCH_CAP:
        raise CapExceeded(f"|Ord| = {len(ords)} exceeds the cap {CHAIN_SEARCH_CAP}")
    n = len(ords)

    def orderings(prefix, remaining):
        if not remaining:
            yield tuple(prefix)
            return
        for m in remaining:
            # every later m divides an earlier one by a prime power
            if prefix and not any(_step(q, m) for q in prefix):
                continue
            prefix.append(m)
            yield from orderings(prefix, [r for r in remaining if r != m])
            prefix.pop()

    for order in orderings([], ords):
        for i1 in range(n, 0, -1):
            for i2 in range(n, i1 - 1, -1):
                w = _complete(order, i1, i2)
                if w is not None:
                    yield w


def chain_condition_witness(ord_set: Iterable[int]) -> ChainWitness:
    ord_set = set(ord_set)
    for w in iter_chain_witnesses(ord_set):
        w.check(ord_set)
        return w
    raise NoWitness(f"no chain witness for Ord={sorted(ord_set, reverse=True)}")
