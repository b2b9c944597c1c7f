"""Greedy pairwise module merging and its randomized variants.

Every prime node of the decomposition is handled on its own, innermost
first.  Its children are merged two at a time until one block is left; each
merge rewires the smaller block (the mover) so that it sees the other blocks
exactly as the larger block (the keeper) does.  ``A[i, j]`` counts the
vertices outside blocks ``i, j`` that see the two blocks differently, so a
merge of ``i`` into ``j`` costs ``A[i, j] * |M_j|`` flipped pairs.

The quotient rows of live blocks never change: only the mover is rewired,
and it is retired straight away.  The indicator ``B[i, j, k]`` (blocks ``i``
and ``j`` see block ``k`` differently) can therefore be read from the
original quotient at any time, and the merged block inherits the keeper's
indicators without any refresh.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Sequence

import numpy as np

from .. import kernels
from ..graph import Graph, bits
from ..modules import MDNode, modular_decomposition_tree, node_quotient, prime_nodes_bottom_up
from .result import EditResult

DEFAULT_BETA = 2.0


class AuditFailure(AssertionError):
    """The incrementally maintained cost matrix diverged from a fresh computation."""


class GreedyState:
    """Block bookkeeping for one prime node.

    ``quotient`` is the 0/1 adjacency of the node's children, ``sizes`` their
    vertex counts and ``minids`` their minimum vertex ids.  With
    ``keep_tensor`` the full indicator tensor ``B`` is materialised and the
    cost updates read from it, as in a direct transcription of the update
    rules; otherwise indicators are read from the quotient on the fly.
    """

    def __init__(self, quotient, sizes: Sequence[int], minids: Sequence[int], keep_tensor: bool = False):
        self.q = np.array(quotient, dtype=bool)
        self.s = np.array(sizes, dtype=np.int64)
        self.mid = np.array(minids, dtype=np.int64)
        k = len(self.s)
        self.k = k
        self.alive = np.ones(k, dtype=bool)
        self.members: list[list[int]] = [[i] for i in range(k)]
        self.B = None
        if keep_tensor:
            b = self.q[:, None, :] != self.q[None, :, :]
            idx = np.arange(k)
            b[idx, :, idx] = False
            b[:, idx, idx] = False
            b[idx, idx, :] = False
            self.B = b
        self.A = self.scratch_costs()

    def live(self) -> np.ndarray:
        return np.flatnonzero(self.alive)

    def scratch_costs(self) -> np.ndarray:
        """Cost matrix computed directly from the current live blocks."""
        live = self.live()
        a = np.zeros((self.k, self.k), dtype=np.int64)
        if len(live) < 2:
            return a
        q = self.q[np.ix_(live, live)]
        s = self.s[live]
        diff = q[:, None, :] != q[None, :, :]
        idx = np.arange(len(live))
        diff[idx, :, idx] = False
        diff[:, idx, idx] = False
        a[np.ix_(live, live)] = diff.astype(np.int64) @ s
        np.fill_diagonal(a, 0)
        return a

    def oriented(self, i: int, j: int) -> tuple[int, int]:
        """``(keeper, mover)``: larger block keeps, ties go to the smaller minimum id."""
        si, sj = self.s[i], self.s[j]
        if si > sj or (si == sj and self.mid[i] < self.mid[j]):
            return i, j
        return j, i

    def pair_costs(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Keeper ids, mover ids and merge costs of every live pair."""
        live = self.live()
        iu, ju = np.triu_indices(len(live), 1)
        a, b = live[iu], live[ju]
        sa, sb = self.s[a], self.s[b]
        keep_a = (sa > sb) | ((sa == sb) & (self.mid[a] < self.mid[b]))
        keepers = np.where(keep_a, a, b)
        movers = np.where(keep_a, b, a)
        cost = self.A[keepers, movers] * self.s[movers]
        return keepers, movers, cost

    def best_pair(self) -> tuple[int, int]:
        """Cheapest pair; ties by (keeper min id, mover min id)."""
        keepers, movers, cost = self.pair_costs()
        best = cost == cost.min()
        kk, mm = keepers[best], movers[best]
        first = np.lexsort((self.mid[mm], self.mid[kk]))[0]
        return int(kk[first]), int(mm[first])

    def merge(self, i: int, j: int) -> list[int]:
        """Merge mover ``j`` into keeper ``i``; return the blocks whose adjacency to ``j`` flips."""
        live = self.live()
        others = live[(live != i) & (live != j)]
        flips: list[int] = []
        if self.A[i, j] != 0:
            flips = [int(m) for m in others if self.q[i, m] != self.q[j, m]]
        sj = self.s[j]
        a = self.A
        if self.B is not None:
            for m in others:
                a[i, m] -= sj * self.B[i, m, j]
                a[m, i] = a[i, m]
            for x in range(len(others)):
                for y in range(x + 1, len(others)):
                    m, l = others[x], others[y]
                    a[m, l] += sj * int(self.B[m, l, i]) - sj * int(self.B[m, l, j])
                    a[l, m] = a[m, l]
        else:
            a[i, others] -= sj * (self.q[i, j] != self.q[others, j])
            a[others, i] = a[i, others]
            if len(others) > 1:
                ci = self.q[others, i]
                cj = self.q[others, j]
                delta = (ci[:, None] != ci[None, :]).astype(np.int64)
                delta -= cj[:, None] != cj[None, :]
                a[np.ix_(others, others)] += sj * delta
        self.s[i] += sj
        self.mid[i] = min(self.mid[i], self.mid[j])
        self.alive[j] = False
        self.members[i].extend(self.members[j])
        return flips

    def check(self) -> None:
        fresh = self.scratch_costs()
        live = self.live()
        sub = np.ix_(live, live)
        if not np.array_equal(fresh[sub], self.A[sub]):
            bad = np.argwhere(fresh[sub] != self.A[sub])[0]
            i, j = live[bad[0]], live[bad[1]]
            raise AuditFailure(f"cost of blocks ({i}, {j}): incremental {self.A[i, j]}, fresh {fresh[i, j]}")


def _flip_children(flipmat: np.ndarray, members: list[list[int]], j: int, ks: list[int]) -> None:
    if not ks:
        return
    mj = members[j]
    mk = [c for k in ks for c in members[k]]
    flipmat[np.ix_(mj, mk)] ^= True
    flipmat[np.ix_(mk, mj)] ^= True


def merges_to_child_flips(k: int, merges) -> np.ndarray:
    """Net child-pair flip matrix of a merge list ``[(keeper, mover, flips), ...]``."""
    members = [[i] for i in range(k)]
    flipmat = np.zeros((k, k), dtype=bool)
    for i, j, ks in merges:
        _flip_children(flipmat, members, j, ks)
        members[i].extend(members[j])
    return flipmat


def _expand(node: MDNode, flipmat: np.ndarray, out: set) -> None:
    kids = [list(bits(c.mask)) for c in node.children]
    for a, b in np.argwhere(np.triu(flipmat, 1)).tolist():
        ka, kb = kids[a], kids[b]
        if len(ka) == 1 and len(kb) == 1:
            x, y = ka[0], kb[0]
            out.add((x, y) if x < y else (y, x))
            continue
        for x in ka:
            for y in kb:
                out.add((x, y) if x < y else (y, x))


def _node_data(g: Graph, node: MDNode):
    q = node_quotient(g, node).to_numpy()
    sizes = [c.size for c in node.children]
    minids = [c.min_vertex for c in node.children]
    return q, sizes, minids


def _run(g: Graph, method: str, node_merges: Callable, timings: dict | None = None) -> EditResult:
    if g.n == 0:
        return EditResult.build(g, (), method)
    t0 = time.perf_counter()
    tree = modular_decomposition_tree(g)
    t1 = time.perf_counter()
    edits: set = set()
    for node in prime_nodes_bottom_up(tree):
        q, sizes, minids = _node_data(g, node)
        merges = node_merges(q, sizes, minids)
        _expand(node, merges_to_child_flips(len(sizes), merges), edits)
    result = EditResult.build(g, edits, method)
    if timings is not None:
        timings["decomposition"] = t1 - t0
        timings["editing"] = time.perf_counter() - t1
    return result


def greedy_merges(q, sizes, minids, audit: bool = False, keep_tensor: bool = False, rng=None):
    """Merge list of the greedy rule on one prime node (Python reference).

    With ``audit`` the cost matrix is recomputed from scratch after every
    merge and compared with the incremental one.  ``rng`` breaks ties among
    equally cheap pairs uniformly at random instead of lexicographically.
    """
    st = GreedyState(q, sizes, minids, keep_tensor=keep_tensor)
    merges = []
    for _ in range(st.k - 1):
        if rng is None:
            i, j = st.best_pair()
        else:
            keepers, movers, cost = st.pair_costs()
            ties = np.flatnonzero(cost == cost.min())
            pick = ties[rng.integers(len(ties))]
            i, j = int(keepers[pick]), int(movers[pick])
        merges.append((i, j, st.merge(i, j)))
        if audit:
            st.check()
    return merges


def heuristic_edit(g: Graph, tie_break: str = "deterministic", seed: int = 0, audit: bool = False,
                   timings: dict | None = None) -> EditResult:
    """Greedy pairwise module merging.

    ``tie_break="deterministic"`` picks, among the cheapest pairs, the smallest
    (keeper min id, mover min id); ``"seeded"`` picks uniformly among them
    with a generator seeded by ``seed``.  ``audit`` checks the incremental
    cost matrix against a fresh one after every merge (slower).  When a
    ``timings`` dict is given, the decomposition and editing phases' wall
    times are stored under ``"decomposition"`` and ``"editing"``.
    """
    if tie_break == "deterministic":
        if audit:
            return _run(g, "greedy", lambda q, s, m: greedy_merges(q, s, m, audit=True), timings)
        return _run(g, "greedy", kernels.greedy_merge, timings)
    if tie_break == "seeded":
        rng = np.random.default_rng(seed)
        return _run(g, "greedy", lambda q, s, m: greedy_merges(q, s, m, audit=audit, rng=rng), timings)
    raise ValueError(f"unknown tie_break {tie_break!r}")


def heuristic_edit_randomized(g: Graph, seed: int = 0, beta: float = DEFAULT_BETA) -> EditResult:
    """Greedy merging with random choices.

    A pair with merge cost ``c`` is drawn with probability proportional to
    ``(1 + c) ** -beta``; the keeper is then block ``i`` with probability
    ``|M_i| / (|M_i| + |M_j|)``.  Randomness comes from NumPy's PCG64 via
    ``numpy.random.default_rng(seed)``.
    """
    rng = np.random.default_rng(seed)

    def node_merges(q, sizes, minids):
        st = GreedyState(q, sizes, minids)
        merges = []
        for _ in range(st.k - 1):
            keepers, movers, cost = st.pair_costs()
            w = (1.0 + cost.astype(float)) ** -beta
            pick = rng.choice(len(w), p=w / w.sum())
            i, j = int(keepers[pick]), int(movers[pick])
            if rng.random() >= st.s[i] / (st.s[i] + st.s[j]):
                i, j = j, i
            merges.append((i, j, st.merge(i, j)))
        return merges

    return _run(g, "greedy-rand", node_merges)


PairSource = Callable[[list[int], np.random.Generator], tuple[int, int]]


def _uniform_pair(live: list[int], rng: np.random.Generator) -> tuple[int, int]:
    a, b = rng.choice(len(live), size=2, replace=False)
    return live[int(a)], live[int(b)]


def random_pair_merges(q, sizes, minids, rng: np.random.Generator, pair_source: PairSource | None = None):
    """Merge list for uniformly random pairs, without any cost bookkeeping.

    Each step costs time linear in the number of blocks, so a node with ``k``
    children takes ``O(k^2)``.  ``pair_source(live, rng)`` overrides the pair
    choice (orientation still follows the size rule).
    """
    q = np.asarray(q, dtype=bool)
    s = list(sizes)
    mid = list(minids)
    live = list(range(len(s)))
    pick = pair_source or _uniform_pair
    merges = []
    while len(live) > 1:
        a, b = pick(live, rng)
        if s[a] > s[b] or (s[a] == s[b] and mid[a] < mid[b]):
            i, j = a, b
        else:
            i, j = b, a
        flips = [k for k in live if k != i and k != j and q[i, k] != q[j, k]]
        merges.append((i, j, flips))
        s[i] += s[j]
        mid[i] = min(mid[i], mid[j])
        live.remove(j)
    return merges


def random_pair_edit(g: Graph, seed: int = 0, pair_source: PairSource | None = None) -> EditResult:
    """Merge uniformly random block pairs; flips stay block-level until the end."""
    rng = np.random.default_rng(seed)
    return _run(g, "random-pair", lambda q, s, m: random_pair_merges(q, s, m, rng, pair_source))


def greedy_quotient_weight(q, sizes, minids) -> tuple[int, np.ndarray]:
    """Total ``|M_a||M_b|`` weight of the greedy flips on one node, and the flip matrix."""
    merges = kernels.greedy_merge(q, sizes, minids)
    flipmat = merges_to_child_flips(len(sizes), merges)
    s = np.asarray(sizes, dtype=np.int64)
    w = np.triu(np.outer(s, s) * flipmat, 1).sum()
    return int(w), flipmat
