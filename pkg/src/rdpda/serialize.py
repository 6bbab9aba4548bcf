"""JSON and DOT serialization.

The JSON document is self-contained:

    {"num_states": 2, "sigma": ["a", "b"], "gamma": ["Z", "X"],
     "initial_state": 0, "initial_stack_symbol": "Z", "finals": [1],
     "transitions": [{"from": 0, "input": "a", "top": "X", "to": 1, "push": "Z"}, ...]}

Pushed words are written with the stack top at the right, exactly as stored.
Emission is deterministic: transitions in canonical order, keys in a fixed
order, so equal automata serialize to identical bytes.
"""
from __future__ import annotations

import json
from typing import Any

from .core import Alphabets, Rdpda
from .errors import FormatError, ParameterError


def to_json_dict(a: Rdpda) -> dict[str, Any]:
    return {
        "num_states": a.num_states,
        "sigma": list(a.alphabets.sigma),
        "gamma": list(a.alphabets.gamma),
        "initial_state": a.initial_state,
        "initial_stack_symbol": a.initial_stack_symbol,
        "finals": sorted(a.finals),
        "transitions": [
            {"from": q, "input": s, "top": x, "to": p, "push": w}
            for q, s, x, p, w in a.transitions()
        ],
    }


def to_json(a: Rdpda, indent: int | None = 2) -> str:
    return json.dumps(to_json_dict(a), indent=indent)


def _require(obj: dict, key: str, kind) -> Any:
    if key not in obj:
        raise FormatError(f"missing key {key!r}")
    value = obj[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise FormatError(f"key {key!r} must be of type {kind.__name__}")
    return value


def from_json_dict(obj: Any) -> Rdpda:
    if not isinstance(obj, dict):
        raise FormatError("document must be a JSON object")
    n = _require(obj, "num_states", int)
    sigma = _require(obj, "sigma", list)
    gamma = _require(obj, "gamma", list)
    initial_state = _require(obj, "initial_state", int)
    initial_stack = _require(obj, "initial_stack_symbol", str)
    finals = _require(obj, "finals", list)
    raw_transitions = _require(obj, "transitions", list)
    if not all(isinstance(q, int) and not isinstance(q, bool) for q in finals):
        raise FormatError("finals must be a list of integers")
    delta: dict[tuple[int, str, str], tuple[int, str]] = {}
    for i, t in enumerate(raw_transitions):
        if not isinstance(t, dict):
            raise FormatError(f"transition {i} must be an object")
        key = (_require(t, "from", int), _require(t, "input", str), _require(t, "top", str))
        if key in delta:
            raise FormatError(f"duplicate transition on {key}")
        delta[key] = (_require(t, "to", int), _require(t, "push", str))
    try:
        return Rdpda(
            num_states=n,
            alphabets=Alphabets(tuple(sigma), tuple(gamma)),
            initial_state=initial_state,
            initial_stack_symbol=initial_stack,
            finals=frozenset(finals),
            delta=delta,
        )
    except ParameterError as exc:
        raise FormatError(str(exc)) from exc


def from_json(text: str) -> Rdpda:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return from_json_dict(obj)


def to_dot(a: Rdpda) -> str:
    """Graphviz view of the transition graph, one edge per transition.

    Edges are labeled "(a,X),w" with "eps" for an empty push; final states
    are drawn with a double circle.
    """
    lines = [
        "digraph rdpda {",
        "  rankdir=LR;",
        '  __start [shape=point, label=""];',
        "  node [shape=circle];",
    ]
    for q in range(a.num_states):
        shape = ', shape=doublecircle' if q in a.finals else ""
        lines.append(f'  {q} [label="{q}"{shape}];')
    lines.append(f"  __start -> {a.initial_state};")
    for q, s, x, p, w in a.transitions():
        label = f"({s},{x}),{w if w else 'eps'}"
        lines.append(f'  {q} -> {p} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
