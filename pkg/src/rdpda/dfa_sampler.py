"""Uniform sampling of accessible deterministic structures.

Strategy: draw a uniform complete transition table (initial state 0),
reject until it is accessible, then canonicalize.  Every isomorphism class
of accessible structures has exactly (n-1)! labeled tables, so the
canonical forms come out uniform.  For rho >= 2 the accessible fraction is
bounded away from 0, so the expected number of rejects stays small at
every n; rho = 1 (where it collapses) is not supported.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import _backend
from .core import Alphabets, UnderlyingDfa
from .errors import ParameterError


@dataclass(frozen=True)
class SamplerReport:
    """Outcome bookkeeping for one rejection-sampling call."""

    rejects: int

    @property
    def generations(self) -> int:
        """Total draws used, rejected ones included."""
        return self.rejects + 1


def _draw_canonical_targets(n: int, rho: int, rng: np.random.Generator):
    rejects = 0
    while True:
        flat = rng.integers(0, n, size=n * rho, dtype=np.int32)
        canon = _backend.canonical_accessible(flat, n, rho)
        if canon is not None:
            return canon, rejects
        rejects += 1


def sample_accessible_dfa(
    n: int, alphabets: Alphabets, rng: np.random.Generator
) -> tuple[UnderlyingDfa, SamplerReport]:
    """Uniform accessible complete structure in canonical form, without finals."""
    if n < 1:
        raise ParameterError("need n >= 1")
    rho = alphabets.rho
    if rho < 2:
        raise ParameterError("sampling needs rho = alpha * beta >= 2")
    canon, rejects = _draw_canonical_targets(n, rho, rng)
    dfa = UnderlyingDfa(
        num_states=n,
        alphabets=alphabets,
        initial_state=0,
        finals=frozenset(),
        targets=tuple(canon.tolist()),
    )
    return dfa, SamplerReport(rejects)


def _draw_finals(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 2, size=n, dtype=np.int32).astype(bool)


def attach_finals(dfa: UnderlyingDfa, rng: np.random.Generator) -> UnderlyingDfa:
    """Mark each state final independently with probability 1/2."""
    mask = _draw_finals(dfa.num_states, rng)
    return replace(dfa, finals=frozenset(int(q) for q in np.flatnonzero(mask)))
