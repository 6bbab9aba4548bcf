"""Random decoration of a structure with pushed words.

A decoration of output size m splits m into one word length per transition
(uniform weak composition, via a uniform bar placement) and fills each word
with uniform stack symbols.  Composition uniformity times word uniformity
gives the uniform distribution over all beta^m * C(s+m-1, m) decorations.
"""
from __future__ import annotations

import numpy as np

from .core import Rdpda, UnderlyingDfa
from .errors import ParameterError


def _draw_composition(m: int, s: int, rng: np.random.Generator) -> np.ndarray:
    if s == 0:
        return np.zeros(0, dtype=np.int64)
    if s == 1:
        return np.array([m], dtype=np.int64)
    if m == 0:
        return np.zeros(s, dtype=np.int64)
    # stars and bars: a uniform (s-1)-subset of the m+s-1 slots marks the bars
    bars = np.sort(rng.choice(m + s - 1, size=s - 1, replace=False))
    return np.diff(np.concatenate(([-1], bars, [m + s - 1]))) - 1


def sample_composition(m: int, s: int, rng: np.random.Generator) -> tuple[int, ...]:
    """Uniform weak composition of m into s ordered non-negative parts."""
    if s < 1 or m < 0:
        raise ParameterError("need s >= 1 and m >= 0")
    return tuple(int(p) for p in _draw_composition(m, s, rng))


def _draw_word_symbols(m: int, beta: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, beta, size=m, dtype=np.int32)


def _assemble(dfa: UnderlyingDfa, parts: np.ndarray, symbols: np.ndarray) -> Rdpda:
    """Attach the word of length parts[i] to the i-th transition (canonical order)."""
    gamma = dfa.alphabets.gamma
    beta, rho = dfa.alphabets.beta, dfa.alphabets.rho
    delta: dict[tuple[int, str, str], tuple[int, str]] = {}
    i = 0
    offset = 0
    for flat, target in enumerate(dfa.targets):
        if target < 0:
            continue
        q, pa = divmod(flat, rho)
        a, x = divmod(pa, beta)
        length = int(parts[i])
        word = "".join(gamma[j] for j in symbols[offset : offset + length])
        delta[(q, dfa.alphabets.sigma[a], gamma[x])] = (target, word)
        offset += length
        i += 1
    return Rdpda(
        num_states=dfa.num_states,
        alphabets=dfa.alphabets,
        initial_state=dfa.initial_state,
        initial_stack_symbol=gamma[0],
        finals=dfa.finals,
        delta=delta,
        require_complete=dfa.is_complete,
    )


def decorate(dfa: UnderlyingDfa, m: int, rng: np.random.Generator) -> Rdpda:
    """Uniform decoration of output size m; the initial stack symbol is gamma[0]."""
    if m < 0:
        raise ParameterError("need m >= 0")
    s = dfa.transition_count
    if s == 0 and m > 0:
        raise ParameterError("cannot decorate a structure without transitions")
    parts = _draw_composition(m, s, rng)
    symbols = _draw_word_symbols(m, dfa.alphabets.beta, rng)
    return _assemble(dfa, parts, symbols)


def _draw_min_pop_parts(
    s: int, m: int, k: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Parts with a uniform forced-pop k-subset, and the forced index set."""
    forced = np.sort(rng.choice(s, size=k, replace=False)) if k else np.zeros(0, dtype=np.int64)
    parts = np.zeros(s, dtype=np.int64)
    free = np.setdiff1d(np.arange(s), forced)
    if free.size:
        parts[free] = _draw_composition(m, int(free.size), rng)
    return parts, forced


def decorate_min_pops(dfa: UnderlyingDfa, m: int, k: int, rng: np.random.Generator) -> Rdpda:
    """Decoration with at least k empty-push transitions.

    Two-stage draw: a uniform k-subset of transitions is forced to push
    nothing, then the remaining s-k transitions receive a uniform decoration
    of output size m.  Other transitions may still come out as pops, so the
    result is NOT uniform over all decorations with >= k pops.
    """
    if m < 0:
        raise ParameterError("need m >= 0")
    s = dfa.transition_count
    if not 0 <= k <= s:
        raise ParameterError("need 0 <= k <= transition count")
    if k == s and m > 0:
        raise ParameterError("all transitions forced to pop but m > 0")
    parts, _ = _draw_min_pop_parts(s, m, k, rng)
    symbols = _draw_word_symbols(m, dfa.alphabets.beta, rng)
    return _assemble(dfa, parts, symbols)
