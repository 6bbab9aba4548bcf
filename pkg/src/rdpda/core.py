"""Real-time deterministic pushdown automata: data model and step semantics.

A machine reads exactly one input letter per step.  Stacks are stored as
strings whose TOP symbol is the RIGHTMOST character; a transition
(q, (a, X)) -> (p, w) pops the top symbol X and appends the word w, so the
new top is the last character of w.  A pop transition has w = "".

All values are immutable and safe to share between threads.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterator, Mapping, Union

from .errors import ParameterError

_SIGMA_POOL = "abcdefghijklmnopqrstuvwxyz"
_GAMMA_POOL = "ZXYWVUTSRQPONMLKJIHGFEDCBA"


@dataclass(frozen=True)
class Alphabets:
    """Input alphabet sigma and stack alphabet gamma.

    Symbols are single characters (stack words serialize as plain strings),
    pairwise distinct, and the two alphabets are disjoint.
    """

    sigma: tuple[str, ...]
    gamma: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "gamma", tuple(self.gamma))
        for name, symbols in (("sigma", self.sigma), ("gamma", self.gamma)):
            if not symbols:
                raise ParameterError(f"{name} must be non-empty")
            if any(not (isinstance(c, str) and len(c) == 1) for c in symbols):
                raise ParameterError(f"{name} symbols must be single characters")
            if len(set(symbols)) != len(symbols):
                raise ParameterError(f"{name} symbols must be distinct")
        if set(self.sigma) & set(self.gamma):
            raise ParameterError("sigma and gamma must be disjoint")

    @classmethod
    def default(cls, alpha: int, beta: int) -> "Alphabets":
        """Standard alphabets: a, b, ... for input and Z, X, ... for the stack."""
        if not 1 <= alpha <= len(_SIGMA_POOL):
            raise ParameterError(f"alpha must be in 1..{len(_SIGMA_POOL)}")
        if not 1 <= beta <= len(_GAMMA_POOL):
            raise ParameterError(f"beta must be in 1..{len(_GAMMA_POOL)}")
        return cls(tuple(_SIGMA_POOL[:alpha]), tuple(_GAMMA_POOL[:beta]))

    @property
    def alpha(self) -> int:
        return len(self.sigma)

    @property
    def beta(self) -> int:
        return len(self.gamma)

    @property
    def rho(self) -> int:
        """Size of the product alphabet sigma x gamma."""
        return len(self.sigma) * len(self.gamma)

    def product_letters(self) -> Iterator[tuple[str, str]]:
        """Pairs (input, stack symbol) in canonical order: input-major."""
        for a in self.sigma:
            for x in self.gamma:
                yield a, x


class AcceptanceMode(Enum):
    EMPTY_STACK = "empty-stack"
    FINAL_STATE = "final-state"
    FINAL_STATE_AND_EMPTY_STACK = "final-state-and-empty-stack"


@dataclass(frozen=True)
class Configuration:
    """A control state together with the current stack word (top at right)."""

    state: int
    stack: str


@dataclass(frozen=True)
class Rdpda:
    """Real-time deterministic pushdown automaton.

    States are the dense integers 0..num_states-1.  `delta` maps
    (state, input symbol, top stack symbol) to (target state, pushed word);
    it may be partial.  With `require_complete` set, construction fails
    unless delta is total on states x sigma x gamma.
    """

    num_states: int
    alphabets: Alphabets
    initial_state: int
    initial_stack_symbol: str
    finals: frozenset[int]
    delta: Mapping[tuple[int, str, str], tuple[int, str]]
    require_complete: bool = False

    def __post_init__(self):
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "delta", dict(self.delta))
        n = self.num_states
        if n < 1:
            raise ParameterError("num_states must be at least 1")
        if not 0 <= self.initial_state < n:
            raise ParameterError("initial_state out of range")
        if self.initial_stack_symbol not in self.alphabets.gamma:
            raise ParameterError("initial stack symbol must belong to gamma")
        if not all(0 <= q < n for q in self.finals):
            raise ParameterError("final state out of range")
        sigma, gamma = set(self.alphabets.sigma), set(self.alphabets.gamma)
        for (q, a, x), (p, w) in self.delta.items():
            if not (0 <= q < n and 0 <= p < n):
                raise ParameterError(f"transition state out of range: {(q, a, x)} -> {(p, w)}")
            if a not in sigma or x not in gamma or any(c not in gamma for c in w):
                raise ParameterError(f"transition over unknown symbols: {(q, a, x)} -> {(p, w)}")
        if self.require_complete and not self.is_complete:
            raise ParameterError("transition map is not complete")

    @property
    def is_complete(self) -> bool:
        return len(self.delta) == self.num_states * self.alphabets.rho

    @property
    def transition_count(self) -> int:
        """s: number of defined transitions."""
        return len(self.delta)

    @property
    def output_size(self) -> int:
        """m: total length of all pushed words."""
        return sum(len(w) for _, w in self.delta.values())

    @property
    def pop_count(self) -> int:
        """Number of transitions pushing the empty word."""
        return sum(1 for _, w in self.delta.values() if not w)

    def transitions(self) -> Iterator[tuple[int, str, str, int, str]]:
        """Defined transitions (q, a, x, p, w) in canonical order."""
        for q in range(self.num_states):
            for a, x in self.alphabets.product_letters():
                entry = self.delta.get((q, a, x))
                if entry is not None:
                    yield q, a, x, entry[0], entry[1]

    def initial_configuration(self) -> Configuration:
        return Configuration(self.initial_state, self.initial_stack_symbol)


@dataclass(frozen=True)
class UnderlyingDfa:
    """Deterministic automaton over the product alphabet sigma x gamma.

    Obtained from an Rdpda by forgetting the pushed words, or built directly
    by the samplers.  `targets` is a flat table indexed by
    state * rho + (input index * beta + stack index); -1 marks an undefined
    transition.
    """

    num_states: int
    alphabets: Alphabets
    initial_state: int
    finals: frozenset[int]
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        n, rho = self.num_states, self.alphabets.rho
        if n < 1:
            raise ParameterError("num_states must be at least 1")
        if not 0 <= self.initial_state < n:
            raise ParameterError("initial_state out of range")
        if not all(0 <= q < n for q in self.finals):
            raise ParameterError("final state out of range")
        if len(self.targets) != n * rho:
            raise ParameterError("targets must have num_states * rho entries")
        if any(t < -1 or t >= n for t in self.targets):
            raise ParameterError("target state out of range")

    @property
    def is_complete(self) -> bool:
        return all(t >= 0 for t in self.targets)

    @property
    def transition_count(self) -> int:
        return sum(1 for t in self.targets if t >= 0)

    def target(self, state: int, letter: str, stack_symbol: str) -> int | None:
        a = self.alphabets.sigma.index(letter)
        x = self.alphabets.gamma.index(stack_symbol)
        t = self.targets[state * self.alphabets.rho + a * self.alphabets.beta + x]
        return None if t < 0 else t


Automaton = Union[Rdpda, UnderlyingDfa]


def step(a: Rdpda, c: Configuration, letter: str) -> Configuration | None:
    """Successor of c on one input letter, or None.

    There is no successor when the stack is empty or delta is undefined on
    (state, letter, top); a run that reaches such a configuration aborts.
    """
    if letter not in a.alphabets.sigma:
        raise ParameterError(f"letter {letter!r} not in sigma")
    if not 0 <= c.state < a.num_states:
        raise ParameterError("configuration state out of range")
    if not c.stack:
        return None
    entry = a.delta.get((c.state, letter, c.stack[-1]))
    if entry is None:
        return None
    p, w = entry
    return Configuration(p, c.stack[:-1] + w)


def accepts(a: Rdpda, word: str, mode: AcceptanceMode) -> bool:
    """Whether the full run on `word` ends in a configuration accepted by `mode`.

    The empty word is accepted only when the initial configuration itself
    qualifies; with a single initial stack symbol this rules out the
    empty-stack modes.
    """
    c = a.initial_configuration()
    for letter in word:
        c = step(a, c, letter)
        if c is None:
            return False
    if mode is AcceptanceMode.EMPTY_STACK:
        return not c.stack
    if mode is AcceptanceMode.FINAL_STATE:
        return c.state in a.finals
    return c.state in a.finals and not c.stack


def run(a: Rdpda, word: str) -> list[Configuration]:
    """Configuration trace of the run on `word`, initial configuration first.

    An aborted run (empty stack or undefined transition) simply ends early,
    so the trace has length len(word)+1 exactly when the whole word is read.
    """
    trace = [a.initial_configuration()]
    for letter in word:
        nxt = step(a, trace[-1], letter)
        if nxt is None:
            break
        trace.append(nxt)
    return trace


def underlying(a: Rdpda) -> UnderlyingDfa:
    """Forget the pushed words, keeping the transition graph over sigma x gamma."""
    beta, rho = a.alphabets.beta, a.alphabets.rho
    targets = [-1] * (a.num_states * rho)
    sigma_idx = {s: i for i, s in enumerate(a.alphabets.sigma)}
    gamma_idx = {x: i for i, x in enumerate(a.alphabets.gamma)}
    for (q, s, x), (p, _) in a.delta.items():
        targets[q * rho + sigma_idx[s] * beta + gamma_idx[x]] = p
    return UnderlyingDfa(a.num_states, a.alphabets, a.initial_state, a.finals, tuple(targets))


def _flat_targets(a: Automaton) -> tuple[int, ...]:
    if isinstance(a, UnderlyingDfa):
        return a.targets
    return underlying(a).targets


def _bfs_order(targets: tuple[int, ...], n: int, rho: int, initial: int) -> list[int] | None:
    """Discovery order of a BFS from `initial`, or None when some state is missed.

    Product letters are explored in canonical order, so the order is the
    same for isomorphic automata.
    """
    newid = [-1] * n
    order = [initial]
    newid[initial] = 0
    i = 0
    while i < len(order):
        base = order[i] * rho
        i += 1
        for p in range(rho):
            t = targets[base + p]
            if t >= 0 and newid[t] < 0:
                newid[t] = len(order)
                order.append(t)
    return order if len(order) == n else None


def is_accessible(a: Automaton) -> bool:
    """Whether every state is reachable in the underlying automaton.

    This is a graph property; it ignores whether stack contents ever allow
    the transitions to fire.
    """
    return _bfs_order(_flat_targets(a), a.num_states, a.alphabets.rho, a.initial_state) is not None


def canonicalize(a: Automaton) -> Automaton:
    """BFS renumbering from the initial state; initial becomes 0.

    Two accessible automata are isomorphic exactly when their canonical
    forms are equal field by field.  Raises ParameterError on inaccessible
    input.
    """
    rho = a.alphabets.rho
    targets = _flat_targets(a)
    order = _bfs_order(targets, a.num_states, rho, a.initial_state)
    if order is None:
        raise ParameterError("automaton is not accessible")
    newid = [0] * a.num_states
    for new, old in enumerate(order):
        newid[old] = new
    finals = frozenset(newid[q] for q in a.finals)
    if isinstance(a, UnderlyingDfa):
        flat = tuple(
            newid[targets[old * rho + p]] if targets[old * rho + p] >= 0 else -1
            for old in order
            for p in range(rho)
        )
        return replace(a, initial_state=0, finals=finals, targets=flat)
    delta = {
        (newid[q], s, x): (newid[p], w)
        for (q, s, x), (p, w) in a.delta.items()
    }
    return replace(a, initial_state=0, finals=finals, delta=delta)
