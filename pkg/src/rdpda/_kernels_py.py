"""Pure-Python kernels.

The compiled module (rdpda._kernels) mirrors these signatures and must
produce identical results; it only changes speed.  Both kernels are
deterministic functions of their inputs, all randomness is drawn by the
caller.
"""
from __future__ import annotations

from collections import deque

import numpy as np

BACKEND = "python"


def canonical_accessible(targets: np.ndarray, n: int, rho: int) -> np.ndarray | None:
    """Canonicalize a complete transition table, or None if not accessible.

    `targets` holds n*rho target states, row per state, product letters in
    canonical order.  BFS from state 0 both checks accessibility and yields
    the renumbering.
    """
    t = targets.tolist()
    newid = [-1] * n
    order = [0]
    newid[0] = 0
    i = 0
    while i < len(order):
        base = order[i] * rho
        i += 1
        for p in range(rho):
            s = t[base + p]
            if newid[s] < 0:
                newid[s] = len(order)
                order.append(s)
    if len(order) < n:
        return None
    out = np.empty(n * rho, dtype=np.int32)
    pos = 0
    for old in order:
        base = old * rho
        for p in range(rho):
            out[pos] = newid[t[base + p]]
            pos += 1
    return out


def saturate(
    r_from: np.ndarray,
    r_sym: np.ndarray,
    r_to: np.ndarray,
    r_off: np.ndarray,
    r_pool: np.ndarray,
    n_pds: int,
    n_gamma: int,
    init_state: int,
    init_sym: int,
    reach_only: bool = False,
):
    """Saturate the single-configuration automaton under the rewrite rules.

    Rule r rewrites (r_from[r], r_sym[r]) into r_to[r], pushing the word
    r_pool[r_off[r]:r_off[r+1]] stored bottom-to-top.  The start automaton
    accepts exactly the configuration (init_state, init_sym); saturation
    adds edges until it accepts every configuration reachable from it.  A
    rule pushing k >= 2 symbols routes through k-1 interior states owned by
    that rule; its first k-1 edges do not depend on the triggering edge and
    are installed once.  A pop rule contributes an edge labeled eps (symbol
    index n_gamma), whose compositions with plain edges are added eagerly,
    so acceptance never needs eps-closure across interior states.  Every
    edge source lies on a path to the accepting state, which makes "control
    state with at least one edge" the same thing as "control state from
    which some configuration is accepted".

    Returns (reach, empty, e_src, e_sym, e_dst, n_pa, final) where `reach`
    marks control states from which some configuration is accepted, `empty`
    marks control states accepted with an empty stack, and the e_* arrays
    list all edges of the saturated automaton.  With reach_only=True the
    fixpoint stops as soon as every control state is marked, and everything
    except reach, n_pa and final comes back as None.
    """
    rf = r_from.tolist()
    rs = r_sym.tolist()
    rt = r_to.tolist()
    off = r_off.tolist()
    pool = r_pool.tolist()
    n_rules = len(rf)

    mid_base = [0] * n_rules
    n_pa = n_pds
    for r in range(n_rules):
        k = off[r + 1] - off[r]
        if k >= 2:
            mid_base[r] = n_pa
            n_pa += k - 1
    final = n_pa
    n_pa += 1
    eps = n_gamma

    rules_at: dict[int, list[int]] = {}
    for r in range(n_rules):
        rules_at.setdefault(rf[r] * n_gamma + rs[r], []).append(r)

    rel: set[tuple[int, int, int]] = set()
    out_edges: list[list[tuple[int, int]]] = [[] for _ in range(n_pa)]
    eps_in: list[list[int]] = [[] for _ in range(n_pa)]
    edges: list[tuple[int, int, int]] = []
    fired = bytearray(n_rules)
    seen_src = bytearray(n_pds)
    n_seen = 0

    # dedup at enqueue: the queue only ever holds distinct edges
    work: deque[tuple[int, int, int]] = deque()

    def push(edge):
        if edge not in rel:
            rel.add(edge)
            work.append(edge)

    push((init_state, init_sym, final))
    while work:
        edge = work.popleft()
        s, g, d = edge
        if s < n_pds and not seen_src[s]:
            seen_src[s] = 1
            n_seen += 1
            if reach_only and n_seen == n_pds:
                reach = np.ones(n_pds, dtype=np.uint8)
                return reach, None, None, None, None, n_pa, final
        if not reach_only:
            edges.append(edge)
        if g == eps:
            eps_in[d].append(s)
            for g2, d2 in out_edges[d]:
                push((s, g2, d2))
        else:
            out_edges[s].append((g, d))
            if s < n_pds:
                for r in rules_at.get(s * n_gamma + g, ()):
                    k = off[r + 1] - off[r]
                    if k == 0:
                        push((rt[r], eps, d))
                    elif k == 1:
                        push((rt[r], pool[off[r]], d))
                    else:
                        base = mid_base[r]
                        if not fired[r]:
                            fired[r] = 1
                            top = off[r + 1] - 1
                            push((rt[r], pool[top], base))
                            for i in range(1, k - 1):
                                push((base + i - 1, pool[top - i], base + i))
                        push((base + k - 2, pool[off[r]], d))
            for s0 in eps_in[s]:
                push((s0, g, d))

    reach = np.frombuffer(bytes(seen_src), dtype=np.uint8).copy()
    if reach_only:
        return reach, None, None, None, None, n_pa, final
    empty = np.zeros(n_pds, dtype=np.uint8)
    for s, g, d in edges:
        if g == eps and d == final and s < n_pds:
            empty[s] = 1
    e_src = np.fromiter((e[0] for e in edges), dtype=np.int32, count=len(edges))
    e_sym = np.fromiter((e[1] for e in edges), dtype=np.int32, count=len(edges))
    e_dst = np.fromiter((e[2] for e in edges), dtype=np.int32, count=len(edges))
    return reach, empty, e_src, e_sym, e_dst, n_pa, final
