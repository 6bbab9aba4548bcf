# distutils: language = c++
"""Compiled kernels.

Same contract as rdpda._kernels_py: deterministic functions of their
inputs, byte-identical results, only faster.  Keep the two modules in
lockstep; tests compare them on random inputs.
"""
import numpy as np

from libc.stdint cimport uint8_t
from libcpp.deque cimport deque
from libcpp.unordered_set cimport unordered_set
from libcpp.utility cimport pair
from libcpp.vector cimport vector

BACKEND = "cython"


def canonical_accessible(targets, int n, int rho):
    """Canonicalize a complete transition table, or None if not accessible."""
    cdef int[::1] t = np.ascontiguousarray(targets, dtype=np.int32)
    cdef vector[int] newid = vector[int](n, -1)
    cdef vector[int] order
    order.reserve(n)
    order.push_back(0)
    newid[0] = 0
    cdef Py_ssize_t i = 0
    cdef int base, p, s
    while i < <Py_ssize_t>order.size():
        base = order[i] * rho
        i += 1
        for p in range(rho):
            s = t[base + p]
            if newid[s] < 0:
                newid[s] = <int>order.size()
                order.push_back(s)
    if <int>order.size() < n:
        return None
    out = np.empty(n * rho, dtype=np.int32)
    cdef int[::1] ov = out
    cdef Py_ssize_t pos = 0
    cdef int old
    for i in range(n):
        old = order[i]
        base = old * rho
        for p in range(rho):
            ov[pos] = newid[t[base + p]]
            pos += 1
    return out


cdef inline long long _key(long long s, long long g, long long d,
                           long long gmax, long long npa):
    return (s * gmax + g) * npa + d


cdef inline void _push(long long key, unordered_set[long long]& rel,
                       deque[long long]& work):
    if rel.insert(key).second:
        work.push_back(key)


def saturate(r_from, r_sym, r_to, r_off, r_pool,
             int n_pds, int n_gamma, int init_state, int init_sym,
             bint reach_only=False):
    """Saturate the single-configuration automaton under the rewrite rules.

    See rdpda._kernels_py.saturate for the contract; this is the same
    worklist algorithm with encoded edge keys.
    """
    cdef int[::1] rf = np.ascontiguousarray(r_from, dtype=np.int32)
    cdef int[::1] rs = np.ascontiguousarray(r_sym, dtype=np.int32)
    cdef int[::1] rt = np.ascontiguousarray(r_to, dtype=np.int32)
    cdef int[::1] off = np.ascontiguousarray(r_off, dtype=np.int32)
    cdef int[::1] pool = np.ascontiguousarray(r_pool, dtype=np.int32)
    cdef Py_ssize_t n_rules = rf.shape[0]

    cdef vector[int] mid_base = vector[int](n_rules, 0)
    cdef int n_pa = n_pds
    cdef Py_ssize_t r
    cdef int klen
    for r in range(n_rules):
        klen = off[r + 1] - off[r]
        if klen >= 2:
            mid_base[r] = n_pa
            n_pa += klen - 1
    cdef int final = n_pa
    n_pa += 1
    cdef int eps = n_gamma
    cdef long long gmax = n_gamma + 1
    cdef long long npa = n_pa

    # rules indexed by (from state, symbol)
    cdef vector[vector[int]] rules_at = vector[vector[int]](n_pds * n_gamma)
    for r in range(n_rules):
        rules_at[rf[r] * n_gamma + rs[r]].push_back(<int>r)

    cdef unordered_set[long long] rel
    cdef vector[vector[pair[int, int]]] out_edges = vector[vector[pair[int, int]]](n_pa)
    cdef vector[vector[int]] eps_in = vector[vector[int]](n_pa)
    cdef vector[int] e_src_v, e_sym_v, e_dst_v
    cdef vector[uint8_t] fired = vector[uint8_t](n_rules, 0)
    cdef vector[uint8_t] seen_src = vector[uint8_t](n_pds, 0)
    cdef int n_seen = 0

    # dedup at enqueue: the queue only ever holds distinct edges
    cdef deque[long long] work
    _push(_key(init_state, init_sym, final, gmax, npa), rel, work)
    cdef long long k
    cdef int s, g, d, ri, base2, top2, s0
    cdef Py_ssize_t j
    cdef int i2
    cdef pair[int, int] gd
    while not work.empty():
        k = work.front()
        work.pop_front()
        d = <int>(k % npa)
        g = <int>((k // npa) % gmax)
        s = <int>(k // (npa * gmax))
        if s < n_pds and not seen_src[s]:
            seen_src[s] = 1
            n_seen += 1
            if reach_only and n_seen == n_pds:
                reach = np.ones(n_pds, dtype=np.uint8)
                return reach, None, None, None, None, n_pa, final
        if not reach_only:
            e_src_v.push_back(s)
            e_sym_v.push_back(g)
            e_dst_v.push_back(d)
        if g == eps:
            eps_in[d].push_back(s)
            for j in range(out_edges[d].size()):
                gd = out_edges[d][j]
                _push(_key(s, gd.first, gd.second, gmax, npa), rel, work)
        else:
            out_edges[s].push_back(pair[int, int](g, d))
            if s < n_pds:
                for j in range(rules_at[s * n_gamma + g].size()):
                    ri = rules_at[s * n_gamma + g][j]
                    klen = off[ri + 1] - off[ri]
                    if klen == 0:
                        _push(_key(rt[ri], eps, d, gmax, npa), rel, work)
                    elif klen == 1:
                        _push(_key(rt[ri], pool[off[ri]], d, gmax, npa), rel, work)
                    else:
                        base2 = mid_base[ri]
                        if not fired[ri]:
                            fired[ri] = 1
                            top2 = off[ri + 1] - 1
                            _push(_key(rt[ri], pool[top2], base2, gmax, npa), rel, work)
                            for i2 in range(1, klen - 1):
                                _push(_key(base2 + i2 - 1, pool[top2 - i2],
                                           base2 + i2, gmax, npa), rel, work)
                        _push(_key(base2 + klen - 2, pool[off[ri]], d, gmax, npa), rel, work)
            for j in range(eps_in[s].size()):
                s0 = eps_in[s][j]
                _push(_key(s0, g, d, gmax, npa), rel, work)

    reach = np.zeros(n_pds, dtype=np.uint8)
    cdef unsigned char[::1] rv = reach
    for j in range(n_pds):
        rv[j] = seen_src[j]
    if reach_only:
        return reach, None, None, None, None, n_pa, final

    empty = np.zeros(n_pds, dtype=np.uint8)
    cdef unsigned char[::1] ev = empty
    cdef Py_ssize_t n_edges = e_src_v.size()
    for j in range(n_edges):
        if e_sym_v[j] == eps and e_dst_v[j] == final and e_src_v[j] < n_pds:
            ev[e_src_v[j]] = 1

    e_src = np.empty(n_edges, dtype=np.int32)
    e_sym = np.empty(n_edges, dtype=np.int32)
    e_dst = np.empty(n_edges, dtype=np.int32)
    cdef int[::1] a1 = e_src
    cdef int[::1] a2 = e_sym
    cdef int[::1] a3 = e_dst
    for j in range(n_edges):
        a1[j] = e_src_v[j]
        a2[j] = e_sym_v[j]
        a3[j] = e_dst_v[j]
    return reach, empty, e_src, e_sym, e_dst, n_pa, final
