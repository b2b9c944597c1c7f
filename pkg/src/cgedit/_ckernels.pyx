# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels (graphs with at most 64 vertices).

Result-for-result twin of ``_pykernels``.  The searches here additionally
prune with a packing bound over pair-disjoint P4s; the first optimum in
depth-first order survives any valid bound, so results are unchanged.
"""

from libc.stdlib cimport malloc, free, calloc
from libc.string cimport memcpy

import numpy as np

IMPL = "cython"

ctypedef unsigned long long u64
ctypedef long long i64

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

cdef i64 INF = 1LL << 62


cdef inline int _ctz(u64 x) noexcept nogil:
    return __builtin_ctzll(x)


cdef int _load(object adj, int n, u64* out) except -1:
    cdef int v
    if n > 64:
        raise ValueError("compiled kernels support at most 64 vertices")
    for v in range(n):
        out[v] = <u64>adj[v]
    return 0


cdef inline int _find_p4(const u64* adj, int n, int* q) noexcept nogil:
    cdef int b, c, a, d
    cdef u64 nb, nc, ends_a, ends_d, rest, free_, low
    for b in range(n):
        nb = adj[b]
        rest = nb
        while rest:
            c = _ctz(rest)
            rest &= rest - 1
            nc = adj[c]
            ends_a = nb & ~nc & ~((<u64>1) << c)
            if not ends_a:
                continue
            ends_d = nc & ~nb & ~((<u64>1) << b)
            if not ends_d:
                continue
            while ends_a:
                a = _ctz(ends_a)
                ends_a &= ends_a - 1
                free_ = ends_d & ~adj[a]
                if free_:
                    d = _ctz(free_)
                    if a > d:
                        q[0] = d; q[1] = c; q[2] = b; q[3] = a
                    else:
                        q[0] = a; q[1] = b; q[2] = c; q[3] = d
                    return 1
    return 0


def find_p4(adj, int n):
    cdef u64 buf[64]
    cdef int q[4]
    _load(adj, n, buf)
    if _find_p4(buf, n, q):
        return (q[0], q[1], q[2], q[3])
    return None


cdef inline void _quad_pairs(const int* q, int* px, int* py) noexcept nogil:
    # six pairs of the quadruple, each (min, max), sorted lexicographically
    cdef int k = 0, i, j, x, y, t
    for i in range(4):
        for j in range(i + 1, 4):
            x = q[i]; y = q[j]
            if x > y:
                t = x; x = y; y = t
            px[k] = x; py[k] = y
            k += 1
    for i in range(1, 6):
        x = px[i]; y = py[i]; j = i - 1
        while j >= 0 and (px[j] > x or (px[j] == x and py[j] > y)):
            px[j + 1] = px[j]; py[j + 1] = py[j]
            j -= 1
        px[j + 1] = x; py[j + 1] = y


cdef struct Search:
    int n
    u64* adj
    unsigned char* flipped
    unsigned char* frozen
    unsigned char* used
    i64* weights
    i64 best
    i64 nodes
    i64 node_limit
    int collect_all
    int stop


cdef i64 _packing_bound(Search* s) noexcept nogil:
    """Sum over greedily packed P4s with pair-disjoint free pairs of their cheapest free pair."""
    cdef int n = s.n
    cdef int b, c, a, d, k, x, y, nfree, usedhit
    cdef u64 nb, nc, ends_a, ends_d, rest, free_
    cdef int q[4]
    cdef int px[6]
    cdef int py[6]
    cdef i64 total = 0, cheapest, w
    for k in range(n * n):
        s.used[k] = 0
    for b in range(n):
        nb = s.adj[b]
        rest = nb
        while rest:
            c = _ctz(rest)
            rest &= rest - 1
            nc = s.adj[c]
            ends_a = nb & ~nc & ~((<u64>1) << c)
            if not ends_a:
                continue
            ends_d = nc & ~nb & ~((<u64>1) << b)
            while ends_a:
                a = _ctz(ends_a)
                ends_a &= ends_a - 1
                free_ = ends_d & ~s.adj[a]
                while free_:
                    d = _ctz(free_)
                    free_ &= free_ - 1
                    q[0] = a; q[1] = b; q[2] = c; q[3] = d
                    _quad_pairs(q, px, py)
                    nfree = 0
                    usedhit = 0
                    cheapest = INF
                    for k in range(6):
                        x = px[k] * n + py[k]
                        if s.flipped[x] or s.frozen[x]:
                            continue
                        nfree += 1
                        if s.used[x]:
                            usedhit = 1
                            break
                        w = s.weights[x] if s.weights != NULL else 1
                        if w < cheapest:
                            cheapest = w
                    if nfree == 0:
                        return INF
                    if usedhit:
                        continue
                    total += cheapest
                    for k in range(6):
                        x = px[k] * n + py[k]
                        if not (s.flipped[x] or s.frozen[x]):
                            s.used[x] = 1
    return total


cdef int _unit_rec(Search* s, int left, list found) except -1:
    cdef int q[4]
    cdef int px[6]
    cdef int py[6]
    cdef int fixed[6]
    cdef int nfixed = 0, k, x, y, idx, u, v
    cdef int n = s.n
    cdef list sol
    if not _find_p4(s.adj, n, q):
        sol = []
        for u in range(n):
            for v in range(u + 1, n):
                if s.flipped[u * n + v]:
                    sol.append((u, v))
        found.append(sol)
        if not s.collect_all:
            s.stop = 1
        return 0
    if left == 0:
        return 0
    if _packing_bound(s) > left:
        return 0
    _quad_pairs(q, px, py)
    for k in range(6):
        x = px[k]; y = py[k]
        idx = x * n + y
        if s.flipped[idx] or s.frozen[idx]:
            continue
        s.adj[x] ^= (<u64>1) << y
        s.adj[y] ^= (<u64>1) << x
        s.flipped[idx] = 1
        _unit_rec(s, left - 1, found)
        s.flipped[idx] = 0
        s.adj[x] ^= (<u64>1) << y
        s.adj[y] ^= (<u64>1) << x
        if s.stop:
            break
        s.frozen[idx] = 1
        fixed[nfixed] = idx
        nfixed += 1
    for k in range(nfixed):
        s.frozen[fixed[k]] = 0
    return 0


cdef void _init_search(Search* s, int n, u64* adj) noexcept:
    s.n = n
    s.adj = adj
    s.flipped = <unsigned char*>calloc(n * n + 1, 1)
    s.frozen = <unsigned char*>calloc(n * n + 1, 1)
    s.used = <unsigned char*>calloc(n * n + 1, 1)
    s.weights = NULL
    s.nodes = 0
    s.node_limit = 0
    s.collect_all = 0
    s.stop = 0


cdef void _free_search(Search* s) noexcept:
    free(s.flipped)
    free(s.frozen)
    free(s.used)
    if s.weights != NULL:
        free(s.weights)


def unit_edit_search(adj, int n, int budget, bint collect_all):
    cdef u64 buf[64]
    cdef Search s
    cdef list found = []
    _load(adj, n, buf)
    _init_search(&s, n, buf)
    s.collect_all = collect_all
    try:
        _unit_rec(&s, budget, found)
    finally:
        _free_search(&s)
    return found


cdef int _weighted_rec(Search* s, i64 cost, list best_pairs) except -1:
    cdef int q[4]
    cdef int px[6]
    cdef int py[6]
    cdef int order[6]
    cdef i64 w6[6]
    cdef int fixed[6]
    cdef int nfixed = 0, ncand = 0, k, m, t, x, y, idx, u, v
    cdef int n = s.n
    cdef i64 w
    s.nodes += 1
    if s.node_limit and s.nodes > s.node_limit:
        raise OverflowError(f"search exceeded {s.node_limit} nodes")
    if not _find_p4(s.adj, n, q):
        if cost < s.best:
            s.best = cost
            del best_pairs[:]
            for u in range(n):
                for v in range(u + 1, n):
                    if s.flipped[u * n + v]:
                        best_pairs.append((u, v))
        return 0
    if cost + _packing_bound(s) >= s.best:
        return 0
    _quad_pairs(q, px, py)
    for k in range(6):
        idx = px[k] * n + py[k]
        if s.flipped[idx] or s.frozen[idx]:
            continue
        order[ncand] = k
        w6[ncand] = s.weights[idx]
        ncand += 1
    # stable insertion sort by weight keeps lexicographic order among ties
    for k in range(1, ncand):
        t = order[k]; w = w6[k]; m = k - 1
        while m >= 0 and w6[m] > w:
            order[m + 1] = order[m]; w6[m + 1] = w6[m]
            m -= 1
        order[m + 1] = t; w6[m + 1] = w
    for k in range(ncand):
        w = w6[k]
        if cost + w >= s.best:
            break
        x = px[order[k]]; y = py[order[k]]
        idx = x * n + y
        s.adj[x] ^= (<u64>1) << y
        s.adj[y] ^= (<u64>1) << x
        s.flipped[idx] = 1
        _weighted_rec(s, cost + w, best_pairs)
        s.flipped[idx] = 0
        s.adj[x] ^= (<u64>1) << y
        s.adj[y] ^= (<u64>1) << x
        s.frozen[idx] = 1
        fixed[nfixed] = idx
        nfixed += 1
    for k in range(nfixed):
        s.frozen[fixed[k]] = 0
    return 0


def weighted_edit_search(adj, int n, weights, i64 upper, i64 node_limit=0):
    cdef u64 buf[64]
    cdef Search s
    cdef list best_pairs = []
    cdef int x, y
    _load(adj, n, buf)
    _init_search(&s, n, buf)
    s.weights = <i64*>calloc(n * n + 1, sizeof(i64))
    for x in range(n):
        for y in range(n):
            if x != y:
                s.weights[x * n + y] = <i64>weights[x][y]
    s.best = upper
    s.node_limit = node_limit
    try:
        _weighted_rec(&s, 0, best_pairs)
        if s.best >= upper:
            return None
        return int(s.best), best_pairs
    finally:
        _free_search(&s)


def module_masks(adj, int n):
    cdef u64 buf[64]
    cdef u64 m, outside, ref, rest
    cdef int x0, y, ok
    cdef list out = []
    if n > 30:
        raise ValueError("module enumeration supports at most 30 vertices")
    _load(adj, n, buf)
    m = 1
    while m < ((<u64>1) << n):
        x0 = _ctz(m)
        ref = buf[x0]
        outside = ~m
        ok = 1
        rest = m & (m - 1)
        while rest:
            y = _ctz(rest)
            rest &= rest - 1
            if (ref ^ buf[y]) & outside:
                ok = 0
                break
        if ok:
            out.append(m)
        m += 1
    return out


def greedy_merge(quotient, sizes, minids):
    cdef unsigned char[:, :] q = np.ascontiguousarray(quotient, dtype=np.uint8)
    cdef i64[:] s = np.array(sizes, dtype=np.int64)
    cdef i64[:] mid = np.array(minids, dtype=np.int64)
    cdef int k = s.shape[0]
    cdef i64[:, :] a = np.zeros((k, k), dtype=np.int64)
    cdef unsigned char[:] alive = np.ones(k, dtype=np.uint8)
    cdef int i, j, m, l, bi, bj, ki, kj
    cdef i64 total, best, c, sj, dm
    cdef list merges = []
    cdef list flips
    for i in range(k):
        for j in range(i + 1, k):
            total = 0
            for m in range(k):
                if m != i and m != j and q[i, m] != q[j, m]:
                    total += s[m]
            a[i, j] = total
            a[j, i] = total
    for _ in range(k - 1):
        best = -1
        bi = bj = -1
        for i in range(k):
            if not alive[i]:
                continue
            for j in range(i + 1, k):
                if not alive[j]:
                    continue
                if s[i] > s[j] or (s[i] == s[j] and mid[i] < mid[j]):
                    ki = i; kj = j
                else:
                    ki = j; kj = i
                c = a[ki, kj] * s[kj]
                if (best < 0 or c < best or (c == best and (
                        mid[ki] < mid[bi] or (mid[ki] == mid[bi] and mid[kj] < mid[bj])))):
                    best = c
                    bi = ki
                    bj = kj
        flips = []
        if a[bi, bj] != 0:
            for m in range(k):
                if alive[m] and m != bi and m != bj and q[bi, m] != q[bj, m]:
                    flips.append(m)
        sj = s[bj]
        for m in range(k):
            if alive[m] and m != bi and m != bj:
                if q[bi, bj] != q[m, bj]:
                    a[bi, m] -= sj
                    a[m, bi] = a[bi, m]
        for m in range(k):
            if not alive[m] or m == bi or m == bj:
                continue
            for l in range(m + 1, k):
                if not alive[l] or l == bi or l == bj:
                    continue
                dm = (q[m, bi] != q[l, bi]) - (q[m, bj] != q[l, bj])
                if dm:
                    a[m, l] += sj * dm
                    a[l, m] = a[m, l]
        s[bi] += sj
        if mid[bj] < mid[bi]:
            mid[bi] = mid[bj]
        alive[bj] = 0
        merges.append((bi, bj, flips))
    return merges
