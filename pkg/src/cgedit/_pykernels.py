"""Pure-Python implementations of the hot kernels.

These mirror ``_ckernels.pyx`` result-for-result: same scan orders, same
branching orders, same tie-breaks.  Only pruning strength may differ, which
never changes a returned value.
"""

from __future__ import annotations

import numpy as np

IMPL = "python"


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def find_p4(adj, n):
    """First induced P4 ``(a, b, c, d)`` in scan order, canonically oriented, or None.

    Scan: middle edge ``b -> c`` with ``b`` ascending and ``c`` ascending among
    neighbours of ``b``; then ``a`` ascending, then ``d`` ascending.
    """
    for b in range(n):
        nb = adj[b]
        for c in _bits(nb):
            nc = adj[c]
            ends_a = nb & ~nc & ~(1 << c)
            if not ends_a:
                continue
            ends_d = nc & ~nb & ~(1 << b)
            if not ends_d:
                continue
            for a in _bits(ends_a):
                free = ends_d & ~adj[a]
                if free:
                    d = (free & -free).bit_length() - 1
                    if a > d:
                        return (d, c, b, a)
                    return (a, b, c, d)
    return None


def _quad_pairs(q):
    a, b, c, d = q
    out = []
    for x, y in ((a, b), (a, c), (a, d), (b, c), (b, d), (c, d)):
        out.append((x, y) if x < y else (y, x))
    out.sort()
    return out


def unit_edit_search(adj, n, budget, collect_all):
    """Depth-limited search for cograph edit sets with at most ``budget`` flips.

    Branches on the pairs of the first P4 found; after trying a pair it is
    frozen for its later siblings, so every edit set is visited at most once.
    Returns the first solution found (``collect_all`` false) or every solution
    reachable within the budget, each as a sorted list of pairs.
    """
    adj = list(adj)
    flipped = set()
    frozen = set()
    found = []

    def rec(left):
        q = find_p4(adj, n)
        if q is None:
            found.append(sorted(flipped))
            return not collect_all
        if left == 0:
            return False
        fixed_here = []
        stop = False
        for x, y in _quad_pairs(q):
            if (x, y) in flipped or (x, y) in frozen:
                continue
            adj[x] ^= 1 << y
            adj[y] ^= 1 << x
            flipped.add((x, y))
            stop = rec(left - 1)
            flipped.discard((x, y))
            adj[x] ^= 1 << y
            adj[y] ^= 1 << x
            if stop:
                break
            frozen.add((x, y))
            fixed_here.append((x, y))
        for p in fixed_here:
            frozen.discard(p)
        return stop

    rec(budget)
    return found


def weighted_edit_search(adj, n, weights, upper, node_limit=0):
    """Branch and bound for a minimum-weight flip set making the graph a cograph.

    ``weights[x][y]`` is the positive cost of flipping pair ``xy``.  Only
    solutions of weight strictly below ``upper`` are reported.  Returns
    ``(weight, pairs)`` for the first optimum in depth-first order, or None.
    Raises ``OverflowError`` once more than ``node_limit`` search nodes have
    been expanded (0 means unlimited).
    """
    adj = list(adj)
    flipped = set()
    frozen = set()
    best = [upper, None]
    nodes = [0]

    def rec(cost):
        nodes[0] += 1
        if node_limit and nodes[0] > node_limit:
            raise OverflowError(f"search exceeded {node_limit} nodes")
        q = find_p4(adj, n)
        if q is None:
            if cost < best[0]:
                best[0] = cost
                best[1] = sorted(flipped)
            return
        cand = [(weights[x][y], x, y) for x, y in _quad_pairs(q)
                if (x, y) not in flipped and (x, y) not in frozen]
        cand.sort()
        fixed_here = []
        for w, x, y in cand:
            if cost + w >= best[0]:
                break
            adj[x] ^= 1 << y
            adj[y] ^= 1 << x
            flipped.add((x, y))
            rec(cost + w)
            flipped.discard((x, y))
            adj[x] ^= 1 << y
            adj[y] ^= 1 << x
            frozen.add((x, y))
            fixed_here.append((x, y))
        for p in fixed_here:
            frozen.discard(p)

    rec(0)
    if best[1] is None:
        return None
    return best[0], best[1]


def module_masks(adj, n):
    """Every non-empty vertex subset that is a module, ascending as integers."""
    out = []
    for m in range(1, 1 << n):
        x0 = (m & -m).bit_length() - 1
        ref = adj[x0]
        outside = ~m
        ok = True
        rest = m & (m - 1)
        while rest:
            low = rest & -rest
            y = low.bit_length() - 1
            if (ref ^ adj[y]) & outside:
                ok = False
                break
            rest ^= low
        if ok:
            out.append(m)
    return out


def greedy_merge(quotient, sizes, minids):
    """Greedy pairwise merging of the blocks of one prime node.

    ``quotient`` is the symmetric 0/1 block adjacency, ``sizes`` the block
    sizes and ``minids`` the minimum vertex id of each block.  Returns the merge
    list ``[(keeper, mover, flips), ...]`` where ``flips`` are the block
    indices ``k`` whose adjacency to ``mover`` is flipped to match ``keeper``.

    Blocks ``i, j`` disagree on ``m`` iff ``q[i, m] != q[j, m]``.  Edits only
    touch the mover, which is retired, so the quotient restricted to live
    blocks never changes and the indicators can be read from it directly.
    """
    q = np.array(quotient, dtype=bool)
    s = np.array(sizes, dtype=np.int64)
    mid = np.array(minids, dtype=np.int64)
    k = len(s)
    alive = np.ones(k, dtype=bool)
    qi = q.astype(np.int64)
    deg = qi @ s
    a = deg[:, None] + deg[None, :] - 2 * ((qi * s) @ qi.T)
    a -= (s[:, None] + s[None, :]) * qi
    np.fill_diagonal(a, 0)
    big = np.iinfo(np.int64).max
    merges = []
    for _ in range(k - 1):
        live = np.flatnonzero(alive)
        ls, lm = s[live], mid[live]
        keeper_first = (ls[:, None] > ls[None, :]) | (
            (ls[:, None] == ls[None, :]) & (lm[:, None] < lm[None, :]))
        cost = a[np.ix_(live, live)] * np.minimum(ls[:, None], ls[None, :])
        cost[~keeper_first] = big
        ii, jj = np.nonzero(cost == cost.min())
        first = np.lexsort((lm[jj], lm[ii]))[0]
        i, j = int(live[ii[first]]), int(live[jj[first]])
        others = live[(live != i) & (live != j)]
        flips = []
        if a[i, j] != 0:
            flips = [int(m) for m in others if q[i, m] != q[j, m]]
        sj = s[j]
        a[i, others] -= sj * (q[i, j] != q[others, j])
        a[others, i] = a[i, others]
        if len(others) > 1:
            col_i = q[others, i]
            col_j = q[others, j]
            delta = (col_i[:, None] != col_i[None, :]).astype(np.int64)
            delta -= col_j[:, None] != col_j[None, :]
            a[np.ix_(others, others)] += sj * delta
        s[i] += sj
        mid[i] = min(mid[i], mid[j])
        alive[j] = False
        merges.append((i, j, flips))
    return merges
