"""Accessible-structure sampling: validity, determinism, uniformity."""
from collections import Counter

import pytest
import scipy.stats

from rdpda.core import Alphabets, canonicalize, is_accessible
from rdpda.dfa_sampler import SamplerReport, attach_finals, sample_accessible_dfa
from rdpda.errors import ParameterError
from rdpda.rng import make_rng


def test_output_is_accessible_and_canonical():
    al = Alphabets.default(2, 2)
    rng = make_rng(7)
    for _ in range(25):
        dfa, report = sample_accessible_dfa(5, al, rng)
        assert is_accessible(dfa)
        assert canonicalize(dfa) == dfa
        assert dfa.initial_state == 0
        assert dfa.finals == frozenset()
        assert report.rejects >= 0
        assert report.generations == report.rejects + 1


def test_deterministic_under_seed():
    al = Alphabets.default(2, 3)
    a1, r1 = sample_accessible_dfa(8, al, make_rng(123))
    a2, r2 = sample_accessible_dfa(8, al, make_rng(123))
    assert a1 == a2
    assert r1 == r2
    a3, _ = sample_accessible_dfa(8, al, make_rng(124))
    assert a3 != a1  # astronomically unlikely to collide


def test_parameter_validation():
    with pytest.raises(ParameterError):
        sample_accessible_dfa(0, Alphabets.default(2, 2), make_rng(0))
    with pytest.raises(ParameterError):
        sample_accessible_dfa(3, Alphabets(("a",), ("Z",)), make_rng(0))


def test_uniform_over_two_state_classes():
    # 12 isomorphism classes at n=2, rho=2; uniform sampling must hit each
    # with equal frequency
    al = Alphabets.default(1, 2)
    rng = make_rng(2026)
    counts = Counter()
    draws = 3000
    for _ in range(draws):
        dfa, _ = sample_accessible_dfa(2, al, rng)
        counts[dfa.targets] += 1
    assert len(counts) == 12
    chi = scipy.stats.chisquare(list(counts.values()))
    assert chi.pvalue > 1e-4


def test_attach_finals():
    al = Alphabets.default(2, 2)
    base, _ = sample_accessible_dfa(6, al, make_rng(5))
    seen = set()
    for seed in range(30):
        dfa = attach_finals(base, make_rng(seed))
        assert dfa.targets == base.targets
        assert all(0 <= q < 6 for q in dfa.finals)
        seen.add(dfa.finals)
    assert len(seen) > 10  # half the 64 subsets in 30 draws, roughly
    assert attach_finals(base, make_rng(3)) == attach_finals(base, make_rng(3))


def test_report_is_frozen():
    r = SamplerReport(rejects=4)
    assert r.generations == 5
    with pytest.raises(AttributeError):
        r.rejects = 0
