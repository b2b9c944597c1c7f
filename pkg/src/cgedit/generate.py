"""Random cographs with planted perturbations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cograph import cotree_to_graph
from .graph import EditSet, Graph, apply_edits, to_mask
from .modules import Label, MDNode, MDTree


@dataclass(frozen=True)
class PlantedInstance:
    graph: Graph
    planted: MDTree
    edits: EditSet

    @property
    def cograph(self) -> Graph:
        return self.planted.source


def random_cotree(n: int, rng: np.random.Generator) -> MDNode:
    """Random cotree on leaves ``0..n-1``.

    A vertex set is shuffled and cut at ``r - 1`` random positions, with the
    arity ``r`` uniform in ``2..size``; labels alternate down the tree and the
    root label is a coin flip.
    """
    if n < 1:
        raise ValueError("a cotree needs at least one leaf")
    root_label = Label.SERIES if rng.random() < 0.5 else Label.PARALLEL
    built: dict[int, MDNode] = {}
    order: list[tuple[int, Label, list[int]]] = []
    stack = [(list(range(n)), root_label)]
    while stack:
        verts, label = stack.pop()
        if len(verts) == 1:
            built[1 << verts[0]] = MDNode(1 << verts[0], Label.LEAF)
            continue
        perm = [verts[i] for i in rng.permutation(len(verts))]
        r = int(rng.integers(2, len(verts) + 1))
        cuts = sorted(int(c) for c in rng.choice(np.arange(1, len(verts)), size=r - 1, replace=False))
        groups = [perm[a:b] for a, b in zip([0] + cuts, cuts + [len(verts)])]
        child = Label.PARALLEL if label is Label.SERIES else Label.SERIES
        masks = [to_mask(gr) for gr in groups]
        order.append((to_mask(verts), label, masks))
        stack.extend((gr, child) for gr in groups)
    for mask, label, kids in reversed(order):
        kids = sorted(kids, key=lambda m: (m & -m))
        built[mask] = MDNode(mask, label, tuple(built[k] for k in kids))
    return built[(1 << n) - 1]


def random_pairs(n: int, k: int, rng: np.random.Generator) -> EditSet:
    total = n * (n - 1) // 2
    if not 0 <= k <= total:
        raise ValueError(f"k must lie in 0..{total} for n={n}, got {k}")
    pairs = []
    for idx in rng.choice(total, size=k, replace=False):
        idx = int(idx)
        # row x holds pairs (x, x+1..n-1); walk rows until idx falls inside
        x = 0
        while idx >= n - 1 - x:
            idx -= n - 1 - x
            x += 1
        pairs.append((x, x + 1 + idx))
    return frozenset(pairs)


def generate_perturbed_cograph(n: int, k: int, seed: int = 0) -> PlantedInstance:
    """Random cograph on ``n`` vertices with ``k`` distinct random pairs flipped."""
    if n < 1:
        raise ValueError("n must be at least 1")
    total = n * (n - 1) // 2
    if not 0 <= k <= total:
        raise ValueError(f"k must lie in 0..{total} for n={n}, got {k}")
    rng = np.random.default_rng(seed)
    root = random_cotree(n, rng)
    h = cotree_to_graph(root)
    f = random_pairs(n, k, rng)
    return PlantedInstance(apply_edits(h, f), MDTree(root, h), f)


def gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi random graph."""
    upper = np.triu(rng.random((n, n)) < p, 1)
    adj = [0] * n
    for u, v in zip(*np.nonzero(upper)):
        adj[u] |= 1 << int(v)
        adj[v] |= 1 << int(u)
    return Graph._trusted(n, tuple(adj))
