"""Exact and asymptotic counting.

Exact counts are Python integers (arbitrary precision); asymptotic values
are kept in log-space so that sizes far beyond float range stay usable.
Rational statistics are returned as Fraction, never floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .core import Alphabets
from .errors import ParameterError


def stirling2(n: int, k: int) -> int:
    """Partitions of an n-set into k non-empty blocks."""
    if n < 0 or k < 0:
        raise ParameterError("stirling2 arguments must be non-negative")
    if k > n:
        return 0
    if n == 0:
        return 1
    if k == 0:
        return 0
    # rolling row of S(i, 0..k); memory O(k), time O(n k)
    row = [1] + [0] * k
    for i in range(1, n + 1):
        hi = min(i, k)
        for j in range(hi, 0, -1):
            row[j] = j * row[j] + row[j - 1]
        row[0] = 0
    return row[k]


def count_decorations(s: int, m: int, beta: int) -> int:
    """Ways to attach push words of total length m to s ordered transitions.

    Each transition gets a word over a beta-letter stack alphabet; only the
    total length is fixed, so the count is beta^m times the number of weak
    compositions of m into s parts.
    """
    if s < 1 or m < 0 or beta < 1:
        raise ParameterError("need s >= 1, m >= 0, beta >= 1")
    return beta**m * comb(s + m - 1, m)


@lru_cache(maxsize=None)
def _labeled_accessible(n: int, k: int) -> int:
    """Complete accessible transition structures on n labeled states, initial fixed.

    Classic peeling recurrence: every one of the n^(kn) complete structures
    restricts to an accessible structure on the states actually reached from
    the initial one, while transitions of unreached states are free.
    """
    total = n ** (k * n)
    for j in range(1, n):
        total -= comb(n - 1, j - 1) * _labeled_accessible(j, k) * n ** (k * (n - j))
    return total


def count_accessible_dfa_classes(n: int, k: int) -> int:
    """Accessible complete deterministic structures on n states over k letters,
    counted up to isomorphism.

    Accessible deterministic structures have no non-trivial automorphisms,
    so each class has exactly (n-1)! labelings once the initial state is
    pinned; the division below is exact.
    """
    if n < 1 or k < 1:
        raise ParameterError("need n >= 1 and k >= 1")
    labeled = _labeled_accessible(n, k)
    q, r = divmod(labeled, factorial(n - 1))
    if r:
        raise AssertionError("accessible structure count not divisible by (n-1)!")
    return q


def count_rdpda(n: int, m: int, alphabets: Alphabets) -> int:
    """Complete accessible machines with n states and output size m, up to
    isomorphism: structure count times decoration count."""
    rho = alphabets.rho
    return count_accessible_dfa_classes(n, rho) * count_decorations(n * rho, m, alphabets.beta)


@dataclass(frozen=True)
class AsymptoticEstimate:
    """An asymptotic value kept as a natural log, with its validity regime."""

    log_value: float
    regime: str
    zeta: Fraction | None = None
    xi: Fraction | None = None

    @property
    def value(self) -> float:
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf

    def scientific(self, digits: int = 4) -> str:
        lg = self.log_value / math.log(10.0)
        e = math.floor(lg)
        mant = 10.0 ** (lg - e)
        if round(mant, digits) >= 10.0:
            mant /= 10.0
            e += 1
        return f"{round(mant, digits)}e{e:+d}"


def _as_lambda(lam) -> Fraction:
    lam = Fraction(lam)
    if lam <= 0:
        raise ParameterError("lambda must be positive")
    return lam


def _integral_output(lam: Fraction, s: int) -> int:
    m = lam * s
    if m.denominator != 1:
        raise ParameterError(f"lambda * s = {m} is not an integer")
    return int(m)


def asymptotic_decorations(lam, s: int, beta: int) -> AsymptoticEstimate:
    """Large-s equivalent of count_decorations(s, lambda*s, beta).

    Saddle point zeta = lambda / (beta (lambda + 1)) and variance factor
    xi = (lambda+1)^3 beta^2 / lambda are reported alongside; the estimate
    is valid for s -> infinity at fixed lambda.
    """
    lam = _as_lambda(lam)
    if s < 1 or beta < 1:
        raise ParameterError("need s >= 1 and beta >= 1")
    m = _integral_output(lam, s)
    lf = float(lam)
    log_value = (
        float((lam + 1) * s - Fraction(1, 2)) * math.log1p(lf)
        + m * math.log(beta)
        - (m + 0.5) * math.log(lf)
        - 0.5 * math.log(2.0 * math.pi * s)
    )
    return AsymptoticEstimate(
        log_value=log_value,
        regime=f"s -> infinity, output size lambda*s with lambda = {lam}",
        zeta=Fraction(lam, beta * (lam + 1)),
        xi=Fraction((lam + 1) ** 3 * beta**2, lam),
    )


def asymptotic_rdpda(lam, n: int, alphabets: Alphabets, gamma_rho: float) -> AsymptoticEstimate:
    """Large-n equivalent of count_rdpda(n, lambda*rho*n, alphabets).

    Product of the accessible-structure equivalent gamma_rho * n * S(rho n, n)
    and the decoration equivalent at s = rho n.  The structure constant
    gamma_rho must be supplied by the caller (see estimate_gamma_rho).
    """
    lam = _as_lambda(lam)
    rho = alphabets.rho
    if n < 1:
        raise ParameterError("need n >= 1")
    if rho < 2:
        raise ParameterError("structure equivalent needs rho >= 2")
    if not gamma_rho > 0:
        raise ParameterError("gamma_rho must be positive")
    s = n * rho
    deco = asymptotic_decorations(lam, s, alphabets.beta)
    log_value = math.log(gamma_rho) + math.log(n) + math.log(stirling2(s, n)) + deco.log_value
    return AsymptoticEstimate(
        log_value=log_value,
        regime=(
            f"n -> infinity, output size lambda*rho*n with lambda = {lam}, "
            f"rho = {rho}, caller-supplied gamma_rho"
        ),
        zeta=deco.zeta,
        xi=deco.xi,
    )


def estimate_gamma_rho(rho: int, max_states: int = 20) -> float:
    """Estimate the structure constant as classes / (n * S(rho n, n)) at
    n = max_states.  Convergence in n is fast; the default is accurate to a
    few percent for rho >= 2."""
    if rho < 2:
        raise ParameterError("structure equivalent needs rho >= 2")
    if max_states < 1:
        raise ParameterError("need max_states >= 1")
    n = max_states
    classes = count_accessible_dfa_classes(n, rho)
    return math.exp(math.log(classes) - math.log(n) - math.log(stirling2(n * rho, n)))


def avg_pop_transitions(s: int, m: int) -> Fraction:
    """Expected number of empty-push transitions of a uniform decoration
    with s transitions and output size m: s(s-1)/(s+m-1)."""
    if s < 1 or m < 0 or s + m < 2:
        raise ParameterError("need s >= 1, m >= 0 and s + m >= 2")
    return Fraction(s * (s - 1), s + m - 1)


def nonempty_lower_bound(s: int, m: int, beta: int) -> Fraction:
    """Lower bound on the probability that a uniform complete machine
    accepts at least one word: (s-1)/(2 beta (s+m-1)).

    Valid under every acceptance mode; trivially 0 when s = 1.
    """
    if s < 1 or m < 0 or beta < 1 or s + m < 2:
        raise ParameterError("need s >= 1, m >= 0, beta >= 1 and s + m >= 2")
    return Fraction(s - 1, 2 * beta * (s + m - 1))
