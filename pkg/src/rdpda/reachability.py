"""Reachability via saturation of a configuration automaton.

A machine's transitions, with input letters forgotten, form stack rewrite
rules (state, top) -> (state, pushed word).  The saturation kernel grows an
automaton that accepts exactly the configurations reachable from the
initial one; a rule pushing k >= 2 symbols threads its word through k-1
dedicated interior states, so rules of any push length are consumed
directly.  State and empty-stack queries read off the saturated edges.

`normalize` is the outward-facing rule form: pushes split to length <= 2
through fresh auxiliary control states, the classical presentation.
`post_star` over the normalized rules and the direct `analyze` path must
agree on every reachability question; tests exercise that equality.

`bounded_reach` is an independent brute-force oracle over explicit
configurations, exact whenever it closes below its stack bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _backend
from .core import AcceptanceMode, Configuration, Rdpda, step
from .errors import ParameterError


@dataclass(frozen=True)
class PdsRule:
    """One rewrite rule; `push` is written TOP-FIRST and has length <= 2."""

    from_state: int
    stack_symbol: str
    to_state: int
    push: str

    def __post_init__(self):
        if self.from_state < 0 or self.to_state < 0:
            raise ParameterError("rule states must be non-negative")
        if len(self.stack_symbol) != 1:
            raise ParameterError("rule reads exactly one stack symbol")
        if len(self.push) > 2:
            raise ParameterError("rule pushes at most two symbols")


@dataclass(frozen=True)
class _RulePack:
    """Rules over integer symbols, ready for the saturation kernel.

    Rule r rewrites (r_from[r], r_sym[r]) into r_to[r] pushing the word
    r_pool[r_off[r]:r_off[r+1]], symbols in stored orientation (top last).
    """

    n_control: int
    n_gamma: int
    r_from: np.ndarray
    r_sym: np.ndarray
    r_to: np.ndarray
    r_off: np.ndarray
    r_pool: np.ndarray


def _pack(
    n_states: int, n_gamma: int, transitions: Iterable[tuple[int, int, int, Sequence[int]]]
) -> _RulePack:
    rf: list[int] = []
    rs: list[int] = []
    rt: list[int] = []
    lens: list[int] = []
    pool: list[int] = []
    for q, x, p, word in transitions:
        rf.append(q)
        rs.append(x)
        rt.append(p)
        lens.append(len(word))
        pool.extend(word)
    off = np.zeros(len(rf) + 1, dtype=np.int32)
    np.cumsum(lens, out=off[1:])
    return _RulePack(
        n_control=n_states,
        n_gamma=n_gamma,
        r_from=np.asarray(rf, dtype=np.int32),
        r_sym=np.asarray(rs, dtype=np.int32),
        r_to=np.asarray(rt, dtype=np.int32),
        r_off=off,
        r_pool=np.asarray(pool, dtype=np.int32),
    )


def _chain_split(
    n_states: int, transitions: Iterable[tuple[int, int, int, Sequence[int]]]
) -> tuple[list[tuple[int, int, int, tuple[int, ...]]], int]:
    """Split pushes to length <= 2 via fresh states; words become TOP-FIRST.

    A rule pushing a long word is replaced by a chain that installs the
    word bottom-up through fresh states numbered from n_states.  Returns
    (rules, total state count including the fresh ones).
    """
    out: list[tuple[int, int, int, tuple[int, ...]]] = []
    n_total = n_states
    for q, x, p, word in transitions:
        y = tuple(reversed(word))  # top-first
        length = len(y)
        if length <= 2:
            out.append((q, x, p, y))
            continue
        cur = n_total
        n_total += 1
        out.append((q, x, cur, y[length - 2 :]))
        for j in range(length - 3, -1, -1):
            nxt = p
            if j > 0:
                nxt = n_total
                n_total += 1
            out.append((cur, y[j + 1], nxt, (y[j], y[j + 1])))
            cur = nxt
    return out, n_total


def _indexed_transitions(a: Rdpda) -> Iterator[tuple[int, int, int, tuple[int, ...]]]:
    gidx = {x: i for i, x in enumerate(a.alphabets.gamma)}
    for q, _, x, p, w in a.transitions():
        yield q, gidx[x], p, tuple(gidx[c] for c in w)


def normalize(a: Rdpda) -> set[PdsRule]:
    """The rewrite rules of a machine, split to push length <= 2.

    Input letters are dropped (distinct letters with the same effect merge
    into one rule); auxiliary chain states are numbered from a.num_states.
    """
    gamma = a.alphabets.gamma
    seen: set[tuple[int, int, int, tuple[int, ...]]] = set()
    deduped = []
    for t in _indexed_transitions(a):
        if t not in seen:
            seen.add(t)
            deduped.append(t)
    split, _ = _chain_split(a.num_states, deduped)
    return {
        PdsRule(q, gamma[x], p, "".join(gamma[i] for i in y)) for q, x, p, y in split
    }


@dataclass(frozen=True)
class PAutomaton:
    """Saturated configuration automaton.

    It accepts the configuration (q, w) exactly when reading w TOP-FIRST
    from state q can reach the accepting state.  Edge symbols are gamma
    indices; index len(gamma) is the epsilon label left by pop rules.
    """

    num_control_states: int
    num_states: int
    final_state: int
    gamma: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]
    reachable_control: frozenset[int]
    empty_stack_control: frozenset[int]

    @cached_property
    def _adjacency(self) -> dict[int, tuple[tuple[int, int], ...]]:
        adj: dict[int, list[tuple[int, int]]] = {}
        for s, g, d in self.edges:
            adj.setdefault(s, []).append((g, d))
        return {s: tuple(v) for s, v in adj.items()}

    def _closure(self, states: set[int]) -> set[int]:
        eps = len(self.gamma)
        out = set(states)
        todo = list(states)
        while todo:
            for g, d in self._adjacency.get(todo.pop(), ()):
                if g == eps and d not in out:
                    out.add(d)
                    todo.append(d)
        return out

    def accepts(self, state: int, word_top_first: str) -> bool:
        """Nondeterministic run over the given top-first stack word."""
        gidx = {x: i for i, x in enumerate(self.gamma)}
        current = self._closure({state})
        for c in word_top_first:
            sym = gidx.get(c)
            if sym is None:
                raise ParameterError(f"symbol {c!r} not in gamma")
            current = {
                d for s in current for g, d in self._adjacency.get(s, ()) if g == sym
            }
            if not current:
                return False
            current = self._closure(current)
        return self.final_state in current

    def accepts_configuration(self, c: Configuration) -> bool:
        return self.accepts(c.state, c.stack[::-1])

    def accepted_configurations(
        self, max_len: int, states: Iterable[int] | None = None
    ) -> frozenset[Configuration]:
        """All accepted configurations with stack height <= max_len."""
        eps = len(self.gamma)
        out: set[Configuration] = set()
        for q in states if states is not None else range(self.num_control_states):
            stack = [(q, "")]
            seen = {(q, "")}
            while stack:
                s, w = stack.pop()
                if s == self.final_state:
                    out.add(Configuration(q, w[::-1]))
                for g, d in self._adjacency.get(s, ()):
                    if g == eps:
                        item = (d, w)
                    elif len(w) < max_len:
                        item = (d, w + self.gamma[g])
                    else:
                        continue
                    if item not in seen:
                        seen.add(item)
                        stack.append(item)
        return frozenset(out)


def _saturate(pack: _RulePack, init_state: int, init_sym: int, reach_only: bool = False):
    return _backend.saturate(
        pack.r_from,
        pack.r_sym,
        pack.r_to,
        pack.r_off,
        pack.r_pool,
        pack.n_control,
        pack.n_gamma,
        init_state,
        init_sym,
        reach_only,
    )


def _build_pautomaton(
    pack: _RulePack, init_state: int, init_sym: int, gamma: tuple[str, ...]
) -> PAutomaton:
    reach, empty, e_src, e_sym, e_dst, n_pa, fin = _saturate(pack, init_state, init_sym)
    return PAutomaton(
        num_control_states=pack.n_control,
        num_states=n_pa,
        final_state=fin,
        gamma=gamma,
        edges=tuple(zip(e_src.tolist(), e_sym.tolist(), e_dst.tolist())),
        reachable_control=frozenset(int(q) for q in np.flatnonzero(reach)),
        empty_stack_control=frozenset(int(q) for q in np.flatnonzero(empty)),
    )


def post_star(rules: Iterable[PdsRule], initial: Configuration) -> PAutomaton:
    """Saturated automaton for the configurations reachable from `initial`.

    `initial` must carry a single stack symbol.  With no rules at all the
    result accepts exactly the initial configuration.
    """
    if len(initial.stack) != 1:
        raise ParameterError("initial configuration must have a one-symbol stack")
    ordered = sorted(
        set(rules), key=lambda r: (r.from_state, r.stack_symbol, r.to_state, r.push)
    )
    symbols = {initial.stack} | {r.stack_symbol for r in ordered}
    for r in ordered:
        symbols.update(r.push)
    gamma = tuple(sorted(symbols))
    gidx = {x: i for i, x in enumerate(gamma)}
    n_states = max(
        [initial.state] + [r.from_state for r in ordered] + [r.to_state for r in ordered]
    ) + 1
    # PdsRule pushes are top-first; the pack stores words top-last
    pack = _pack(
        n_states,
        len(gamma),
        ((r.from_state, gidx[r.stack_symbol], r.to_state,
          tuple(gidx[c] for c in reversed(r.push))) for r in ordered),
    )
    return _build_pautomaton(pack, initial.state, gidx[initial.stack], gamma)


def analyze(a: Rdpda) -> PAutomaton:
    """Saturation over the machine's own transitions, long pushes included."""
    pack = _pack(a.num_states, a.alphabets.beta, _indexed_transitions(a))
    init_sym = a.alphabets.gamma.index(a.initial_stack_symbol)
    return _build_pautomaton(pack, a.initial_state, init_sym, a.alphabets.gamma)


def reachable_states(a: Rdpda) -> frozenset[int]:
    """States occurring in some run from the initial configuration.

    The initial state is always included.  This is the run-level notion;
    it can be much smaller than graph accessibility.
    """
    pa = analyze(a)
    return frozenset(q for q in pa.reachable_control if q < a.num_states)


def empty_stack_reachable_states(a: Rdpda) -> frozenset[int]:
    """States reachable together with a fully emptied stack."""
    pa = analyze(a)
    return frozenset(q for q in pa.empty_stack_control if q < a.num_states)


def is_language_empty(a: Rdpda, mode: AcceptanceMode) -> bool:
    """Emptiness by mode, decided from the reachable configuration sets."""
    pa = analyze(a)
    if mode is AcceptanceMode.FINAL_STATE:
        reach = {q for q in pa.reachable_control if q < a.num_states}
        return not (reach & a.finals)
    empt = {q for q in pa.empty_stack_control if q < a.num_states}
    if mode is AcceptanceMode.EMPTY_STACK:
        return not empt
    return not (empt & a.finals)


def _state_masks(
    pack: _RulePack, init_state: int, init_sym: int, need_empty: bool = True
) -> tuple[np.ndarray, np.ndarray | None]:
    """(reachable, empty-stack) boolean masks over the control states.

    With need_empty=False the kernel may stop as soon as every control
    state is known reachable, and the empty mask comes back as None.
    """
    reach, empty, *_ = _saturate(pack, init_state, init_sym, reach_only=not need_empty)
    n = pack.n_control
    if empty is None:
        return reach[:n].astype(bool), None
    return reach[:n].astype(bool), empty[:n].astype(bool)


@dataclass(frozen=True)
class BoundedReach:
    """Explicit reachable configurations up to a stack height bound.

    `closed` means no successor ever exceeded the bound, in which case the
    configuration set is the complete reachable set; otherwise it is a
    subset of it.
    """

    configurations: frozenset[Configuration]
    closed: bool


def bounded_reach(a: Rdpda, max_stack: int) -> BoundedReach:
    if max_stack < 1:
        raise ParameterError("need max_stack >= 1")
    start = a.initial_configuration()
    seen = {start}
    queue = [start]
    closed = True
    while queue:
        c = queue.pop()
        for letter in a.alphabets.sigma:
            nxt = step(a, c, letter)
            if nxt is None:
                continue
            if len(nxt.stack) > max_stack:
                closed = False
            elif nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return BoundedReach(frozenset(seen), closed)
