"""Exact counts against brute force, rational statistics, asymptotic accuracy.

The class counts are checked against an independent enumerator that builds
every complete transition table, filters the accessible ones and dedups by a
locally computed canonical relabeling, so the expected numbers below are not
produced by the code under test.
"""
import itertools
import math
from fractions import Fraction
from math import lgamma, log

import pytest
from hypothesis import given, strategies as st

from rdpda.core import Alphabets
from rdpda.counting import (
    asymptotic_decorations,
    asymptotic_rdpda,
    avg_pop_transitions,
    count_accessible_dfa_classes,
    count_decorations,
    count_rdpda,
    estimate_gamma_rho,
    nonempty_lower_bound,
    stirling2,
)
from rdpda.errors import ParameterError


def _classes_brute_force(n: int, k: int) -> int:
    seen = set()
    for tbl in itertools.product(range(n), repeat=n * k):
        reach, frontier = {0}, [0]
        while frontier:
            q = frontier.pop()
            for a in range(k):
                t = tbl[q * k + a]
                if t not in reach:
                    reach.add(t)
                    frontier.append(t)
        if len(reach) != n:
            continue
        order, queue = {0: 0}, [0]
        while queue:
            q = queue.pop(0)
            for a in range(k):
                t = tbl[q * k + a]
                if t not in order:
                    order[t] = len(order)
                    queue.append(t)
        canon = [0] * (n * k)
        for q in range(n):
            for a in range(k):
                canon[order[q] * k + a] = order[tbl[q * k + a]]
        seen.add(tuple(canon))
    return len(seen)


def test_stirling_small_table():
    assert stirling2(0, 0) == 1
    assert stirling2(4, 2) == 7
    assert stirling2(5, 3) == 25
    assert stirling2(3, 5) == 0
    assert sum(stirling2(4, k) for k in range(5)) == 15  # Bell(4)
    with pytest.raises(ParameterError):
        stirling2(-1, 2)


@given(st.integers(1, 30))
def test_stirling_boundary_columns(n):
    assert stirling2(n, 1) == 1
    assert stirling2(n, n) == 1
    assert stirling2(n, n - 1) == n * (n - 1) // 2


def test_count_decorations_frozen():
    assert count_decorations(2, 1, 2) == 4
    assert count_decorations(3, 2, 2) == 24
    assert count_decorations(4, 2, 2) == 40
    assert count_decorations(5, 0, 7) == 1
    with pytest.raises(ParameterError):
        count_decorations(0, 1, 2)


def test_count_decorations_matches_enumeration():
    # enumerate all ways to give 3 transitions words over {0,1} totalling 2
    s, m, beta = 3, 2, 2
    count = 0
    for lens in itertools.product(range(m + 1), repeat=s):
        if sum(lens) == m:
            count += beta**m
    assert count_decorations(s, m, beta) == count


@pytest.mark.parametrize(
    "n,k,expected",
    [(1, 2, 1), (1, 3, 1), (2, 2, 12), (3, 2, 216), (2, 3, 56)],
)
def test_accessible_classes_frozen(n, k, expected):
    assert count_accessible_dfa_classes(n, k) == expected


@pytest.mark.parametrize("n,k", [(2, 2), (3, 2), (2, 3)])
def test_accessible_classes_against_brute_force(n, k):
    assert count_accessible_dfa_classes(n, k) == _classes_brute_force(n, k)


def test_count_rdpda_frozen():
    al = Alphabets.default(1, 2)
    assert [count_rdpda(2, m, al) for m in range(4)] == [12, 96, 480, 1920]


def test_count_rdpda_is_product():
    al = Alphabets.default(2, 2)
    n, m = 3, 5
    expected = count_accessible_dfa_classes(n, al.rho) * count_decorations(
        n * al.rho, m, al.beta
    )
    assert count_rdpda(n, m, al) == expected


def test_asymptotic_decorations_constants():
    est = asymptotic_decorations(1, 8, 2)
    assert est.zeta == Fraction(1, 4)
    assert est.xi == Fraction(32)
    est = asymptotic_decorations(Fraction(1, 2), 8, 3)
    assert est.zeta == Fraction(1, 9)
    assert est.xi == Fraction(243, 4)


def test_asymptotic_decorations_accuracy():
    # exact log count via lgamma, fully independent of count_decorations
    def log_exact(s, m, beta):
        return m * log(beta) + lgamma(s + m) - lgamma(m + 1) - lgamma(s)

    errs = []
    for s in (50, 200, 400):
        est = asymptotic_decorations(1, s, 2)
        exact = log_exact(s, s, 2)
        errs.append(abs(est.log_value - exact) / exact)
    assert errs[0] < 3e-5
    assert errs == sorted(errs, reverse=True)  # sharpens as s grows
    assert errs[-1] < 1e-6


def test_asymptotic_decorations_rejects_non_integral_output():
    with pytest.raises(ParameterError):
        asymptotic_decorations(Fraction(1, 2), 7, 2)


def test_estimate_gamma_rho_converges():
    g12 = estimate_gamma_rho(2, max_states=12)
    g20 = estimate_gamma_rho(2, max_states=20)
    assert abs(g12 - g20) / g20 < 0.01
    assert 0.7 < g20 < 0.8


def test_asymptotic_rdpda_tracks_exact_count():
    al = Alphabets.default(1, 2)
    n = 12
    gamma = estimate_gamma_rho(2, max_states=20)
    est = asymptotic_rdpda(1, n, al, gamma)
    exact = math.log(count_rdpda(n, al.rho * n, al))
    assert abs(est.log_value - exact) / exact < 5e-4
    assert "e+" in est.scientific() or "e-" in est.scientific()


def test_asymptotic_rdpda_rejects_unary_product():
    with pytest.raises(ParameterError):
        asymptotic_rdpda(1, 5, Alphabets(("a",), ("Z",)), 0.75)


def test_avg_pop_transitions_frozen():
    assert avg_pop_transitions(8, 8) == Fraction(56, 15)
    assert avg_pop_transitions(2, 0) == 2
    with pytest.raises(ParameterError):
        avg_pop_transitions(1, 0)


@given(st.integers(2, 60), st.integers(0, 60))
def test_avg_pop_transitions_matches_expectation(s, m):
    # expectation over all compositions of m into s parts, each weighted
    # equally: count parts equal to zero
    total = 0
    zero_parts = 0
    # P(part i = 0) is uniform over i, so s * P(first part 0) suffices
    from math import comb

    zero_parts = s * comb(s + m - 2, m)
    total = comb(s + m - 1, m)
    assert avg_pop_transitions(s, m) == Fraction(zero_parts, total)


def test_nonempty_lower_bound_frozen():
    assert nonempty_lower_bound(4, 4, 2) == Fraction(3, 28)
    assert nonempty_lower_bound(1, 1, 3) == 0
    assert 0 <= nonempty_lower_bound(100, 200, 2) < 1
