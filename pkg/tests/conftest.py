import pytest
from hypothesis import settings

from rdpda.core import Alphabets, Rdpda

settings.register_profile("ci", deadline=None, max_examples=60)
settings.load_profile("ci")


@pytest.fixture
def two_state_complete() -> Rdpda:
    """Two-state complete machine used in the worked examples.

    Pushed words are stored bottom..top, so "ZZX" leaves X on top.
    """
    alph = Alphabets(sigma=("a", "b"), gamma=("Z", "X"))
    delta = {
        (0, "a", "Z"): (0, "ZZX"),
        (0, "b", "Z"): (0, "ZX"),
        (0, "a", "X"): (1, "Z"),
        (0, "b", "X"): (0, "X"),
        (1, "a", "Z"): (0, "XZX"),
        (1, "b", "Z"): (1, ""),
        (1, "a", "X"): (1, "XX"),
        (1, "b", "X"): (0, ""),
    }
    return Rdpda(
        num_states=2,
        alphabets=alph,
        initial_state=0,
        initial_stack_symbol="Z",
        finals=frozenset({1}),
        delta=delta,
    )


@pytest.fixture
def four_state_partial() -> Rdpda:
    """Partial machine whose empty-stack language is exactly {"b"}.

    State 2 is a trap behind a transition that can never fire (the stack
    never holds a second X when state 1 is entered), and state 3 needs a Z
    that is never on the stack; both are unreachable despite being
    accessible in the underlying graph sense.
    """
    alph = Alphabets(sigma=("a", "b"), gamma=("Z", "X"))
    delta = {
        (0, "a", "X"): (0, "X"),
        (0, "b", "X"): (1, ""),
        (1, "b", "X"): (2, "XX"),
        (0, "a", "Z"): (3, ""),
    }
    return Rdpda(
        num_states=4,
        alphabets=alph,
        initial_state=0,
        initial_stack_symbol="X",
        finals=frozenset({1, 2, 3}),
        delta=delta,
        require_complete=False,
    )
