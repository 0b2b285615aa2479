import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mlgz.cyclotomic import (
    CHAIN_SEARCH_CAP,
    CycloFactorization,
    acampo_check,
    chain_condition_witness,
    cyclotomic_factor,
    cyclotomic_poly,
    euler_phi,
    exists_minus_id_power,
    iter_chain_witnesses,
    moebius,
    power_traces,
    signed_power_group_order,
    trace_sum,
)
from mlgz.errors import CapExceeded, NotCyclotomicProduct, NoWitness
from mlgz.linalg import IntPoly

SMALL_ORDERS = [m for m in range(1, 120) if euler_phi(m) <= 16]
t = sympy.Symbol("t")


def ramanujan_sum(m, k):
    """Sum of the k-th powers of the primitive m-th roots of unity."""
    g = math.gcd(m, k)
    return sum(sympy.mobius(m // d) * d for d in sympy.divisors(g))


def minus_id_power_oracle(orders):
    # lambda^k = -1 for a primitive m-th root exactly when m | 2k but m does not divide k
    n = math.lcm(*orders)
    for k in range(1, n + 1):
        if all((2 * k) % m == 0 and k % m for m in orders):
            return k
    return None


multisets = st.lists(st.sampled_from(SMALL_ORDERS), min_size=1, max_size=6).filter(
    lambda ms: sum(euler_phi(m) for m in ms) <= 16
)


class TestNumberTheory:
    @pytest.mark.parametrize("m", range(1, 80))
    def test_moebius_and_phi_against_sympy(self, m):
        assert moebius(m) == sympy.mobius(m)
        assert euler_phi(m) == sympy.totient(m)

    @pytest.mark.parametrize("m", range(1, 70))
    def test_cyclotomic_poly_against_sympy(self, m):
        ref = sympy.Poly(sympy.cyclotomic_poly(m, t), t).all_coeffs()[::-1]
        assert cyclotomic_poly(m) == IntPoly(int(c) for c in ref)

    def test_known_small(self):
        assert str(cyclotomic_poly(3)) == "t^2+t+1"
        assert cyclotomic_poly(105).coeffs[7] == -2


class TestFactorization:
    def test_rendering(self):
        f = CycloFactorization.from_orders([3, 12])
        assert f.render() == "Phi12*Phi3"
        assert CycloFactorization.from_orders([2, 2, 2]).render() == "Phi2^3"

    @given(multisets)
    @settings(max_examples=120, deadline=None)
    def test_factor_roundtrip(self, orders):
        f = CycloFactorization.from_orders(orders)
        assert cyclotomic_factor(f.expand()) == f
        assert f.mu == sum(euler_phi(m) for m in orders)
        assert f.is_squarefree == (len(set(orders)) == len(orders))

    def test_a_mu_polynomial(self):
        # (t^6 - 1) / (t - 1)
        f = cyclotomic_factor(IntPoly([1] * 6))
        assert f.orders() == [6, 3, 2]

    def test_non_cyclotomic(self):
        with pytest.raises(NotCyclotomicProduct):
            cyclotomic_factor(IntPoly((1, -3, 1)))  # t^2 - 3t + 1

    def test_non_monic(self):
        with pytest.raises(ValueError):
            cyclotomic_factor(IntPoly((1, 2)))


class TestTraces:
    @given(multisets, st.integers(1, 30))
    @settings(max_examples=120, deadline=None)
    def test_power_traces_are_ramanujan_sums(self, orders, K):
        f = CycloFactorization.from_orders(orders)
        expected = [sum(ramanujan_sum(m, k) for m in orders) for k in range(1, K + 1)]
        assert power_traces(f, K) == expected

    def test_trace_sum_is_moebius_sum(self):
        f = CycloFactorization.from_orders([18, 6, 3, 2])
        # moebius: 18 -> 0, 6 -> 1, 3 -> -1, 2 -> -1
        assert trace_sum(f) == -1

    def test_e12_traces(self):
        assert power_traces(CycloFactorization.from_orders([42]), 2) == [-1, 1]

    def test_e6_acampo(self):
        assert acampo_check(CycloFactorization.from_orders([12, 3]), 2, 2)
        assert not acampo_check(CycloFactorization.from_orders([12, 3, 3]), 2, 2)
        with pytest.raises(ValueError):
            acampo_check(CycloFactorization.from_orders([3]), 2, 1)


class TestMinusIdPower:
    @pytest.mark.parametrize("orders,expected", [({18, 2}, 9), ({12, 3}, None), ({30}, 15), ({42}, 21)])
    def test_quoted_values(self, orders, expected):
        assert exists_minus_id_power(orders) == expected

    @given(st.sets(st.sampled_from(SMALL_ORDERS), min_size=1, max_size=5))
    @settings(max_examples=200, deadline=None)
    def test_against_search(self, orders):
        assert exists_minus_id_power(orders) == minus_id_power_oracle(orders)

    @given(multisets)
    @settings(max_examples=200, deadline=None)
    def test_signed_group_order(self, orders):
        f = CycloFactorization.from_orders(orders)
        n = math.lcm(*orders)
        # +-M^k acts on the m-eigenlines by the angle k/m (+ 1/2 for the sign), in turns
        ms = sorted(set(orders))
        seen = {tuple((Fraction(k, m) + half) % 1 for m in ms) for k in range(n) for half in (0, Fraction(1, 2))}
        assert signed_power_group_order(f) == len(seen)


class TestChainWitness:
    def test_q11_needs_i1_above_one(self):
        w = chain_condition_witness({18, 6, 3, 2})
        assert w.m_seq == (18, 6, 3, 2)
        assert (w.i1, w.i2) == (2, 3)
        assert all(w.i1 > 1 for w in iter_chain_witnesses({18, 6, 3, 2}))
        assert all(w.i1 > 1 for w in iter_chain_witnesses({30, 10, 6, 3, 2}))

    def test_e13(self):
        w = chain_condition_witness({30, 10, 2})
        assert (w.i1, w.i2) == (3, 3)
        assert [w.p(i) for i in (2, 3)] == [3, 5]

    def test_d5_uses_a_two_step(self):
        w = chain_condition_witness({8, 2})
        assert w.m_seq == (8, 2) and w.p(2) == 2 and w.k(2) == 2

    def test_no_witness(self):
        with pytest.raises(NoWitness):
            chain_condition_witness({15, 2})

    def test_cap(self):
        big = {2**i for i in range(1, CHAIN_SEARCH_CAP + 2)}
        with pytest.raises(CapExceeded):
            chain_condition_witness(big)

    @given(st.sets(st.sampled_from(SMALL_ORDERS), min_size=1, max_size=5))
    @settings(max_examples=200, deadline=None)
    def test_every_emitted_witness_checks(self, orders):
        for w in iter_chain_witnesses(orders):
            w.check(orders)


def test_traces_and_minus_id_power_are_incompatible_exhaustive():
    """t1 = t2 = -1 on rank >= 2 rules out M^k = -id, over every multiset of degree <= 16."""
    checked = 0

    def rec(start, deg, cur):
        nonlocal checked
        if deg >= 2:
            f = CycloFactorization.from_orders(cur)
            if power_traces(f, 2) == [-1, -1]:
                checked += 1
                assert exists_minus_id_power(f.ord_set) is None, cur
        for i in range(start, len(SMALL_ORDERS)):
            d = euler_phi(SMALL_ORDERS[i])
            if deg + d <= 16:
                cur.append(SMALL_ORDERS[i])
                rec(i, deg + d, cur)
                cur.pop()

    rec(0, 0, [])
    assert checked > 500
