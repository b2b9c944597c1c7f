"""Exact cograph editing through the prime nodes of the decomposition.

Some optimal edit set preserves every module of the input.  Such a set only
edits between children of prime nodes, and between two children it flips
all pairs or none.  So each prime node can be solved on its own as weighted
cograph editing of its quotient, where flipping children ``a, b`` costs
``|M_a| * |M_b|``.  The union of the per-node answers is optimal, and it is
returned together with its pairwise merge trace.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence

import numpy as np

from .. import kernels
from ..graph import Graph, bits
from ..merge import pairwise_merge_sequence
from ..modules import modular_decomposition_tree, node_quotient, prime_nodes_bottom_up
from .heuristic import greedy_quotient_weight, merges_to_child_flips
from .result import EditResult, SearchBoundExceeded

MAX_CHILDREN = 16


def _weight_matrix(n: int, w) -> list[list[int]]:
    out = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x + 1, n):
            if isinstance(w, Mapping):
                v = w.get((x, y), w.get((y, x)))
            else:
                v = w[x][y]
            if v is None or int(v) != v or v <= 0:
                raise ValueError(f"weight of pair ({x}, {y}) must be a positive integer, got {v!r}")
            out[x][y] = out[y][x] = int(v)
    return out


def _solve(q: Graph, weights: list[list[int]], upper: int, node_limit: int) -> tuple[int, frozenset]:
    try:
        res = kernels.weighted_edit_search(q.masks, q.n, weights, upper, node_limit)
    except OverflowError as exc:
        raise SearchBoundExceeded(str(exc)) from exc
    if res is None:  # pragma: no cover - upper is always attained by a known solution
        raise AssertionError("weighted search found nothing below a feasible bound")
    w, pairs = res
    return w, frozenset(map(tuple, pairs))


def weighted_quotient_cograph_edit(q: Graph, weights: Sequence[Sequence[int]] | Mapping,
                                   node_limit: int = 0) -> tuple[int, frozenset[tuple[int, int]]]:
    """Minimum-weight flip set turning ``q`` into a cograph, with its weight.

    ``weights`` is a symmetric matrix or a ``{(x, y): w}`` mapping of positive
    integers.  The search starts from the weight of the greedy merge solution
    plus one, so the reported optimum is the first one met in depth-first
    order.  ``node_limit`` (0 = unlimited) bounds the search.
    """
    wm = _weight_matrix(q.n, weights)
    merges = kernels.greedy_merge(q.to_numpy(), [1] * q.n, list(range(q.n)))
    flipmat = merges_to_child_flips(q.n, merges)
    upper = sum(wm[a][b] for a, b in zip(*np.nonzero(np.triu(flipmat, 1)))) + 1
    return _solve(q, wm, upper, node_limit)


def exact_edit(g: Graph, max_children: int = MAX_CHILDREN, node_limit: int = 0,
               with_trace: bool = True) -> EditResult:
    """Optimal cograph edit set of ``g``, solved per prime node.

    Prime nodes with more than ``max_children`` children, or searches past
    ``node_limit`` nodes, raise :class:`SearchBoundExceeded`.
    """
    if g.n == 0:
        return EditResult.build(g, (), "exact")
    tree = modular_decomposition_tree(g)
    edits = set()
    for node in prime_nodes_bottom_up(tree):
        k = len(node.children)
        if k > max_children:
            raise SearchBoundExceeded(f"prime node with {k} children exceeds the bound {max_children}")
        q = node_quotient(g, node)
        sizes = [c.size for c in node.children]
        minids = [c.min_vertex for c in node.children]
        wm = [[sizes[a] * sizes[b] if a != b else 0 for b in range(k)] for a in range(k)]
        greedy_w, _ = greedy_quotient_weight(q.to_numpy(), sizes, minids)
        _, pairs = _solve(q, wm, greedy_w + 1, node_limit)
        kids = [c.mask for c in node.children]
        for a, b in pairs:
            for x in bits(kids[a]):
                for y in bits(kids[b]):
                    edits.add((x, y) if x < y else (y, x))
    trace = pairwise_merge_sequence(g, edits, optimal=True) if with_trace else None
    return EditResult.build(g, edits, "exact", trace)
