"""Modules, strong modules and the modular decomposition tree.

A module is a vertex set whose members agree on every vertex outside it.
The decomposition is the classical recursive one: a disconnected graph splits
into its components (parallel), a graph with disconnected complement into its
co-components (series), and otherwise the maximal proper modules form the
children of a prime node.  The prime case is handled by partition refinement
(see :func:`_prime_partition`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from collections.abc import Iterable, Iterator

from . import kernels
from .graph import (
    Graph,
    bits,
    co_components_mask,
    connected_components_mask,
    induced_subgraph,
    lowest,
    popcount,
    to_mask,
    to_set,
)

DEFAULT_ENUM_BOUND = 16


class Label(str, Enum):
    LEAF = "leaf"
    PARALLEL = "parallel"
    SERIES = "series"
    PRIME = "prime"


@dataclass(frozen=True)
class MDNode:
    """A strong module with its label and children (sorted by minimum vertex)."""

    mask: int
    label: Label
    children: tuple[MDNode, ...] = ()

    @property
    def vertices(self) -> frozenset[int]:
        return to_set(self.mask)

    @property
    def min_vertex(self) -> int:
        return lowest(self.mask)

    @property
    def size(self) -> int:
        return popcount(self.mask)

    def is_leaf(self) -> bool:
        return self.label is Label.LEAF

    def preorder(self) -> Iterator[MDNode]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def postorder(self) -> Iterator[MDNode]:
        stack: list[tuple[MDNode, bool]] = [(self, False)]
        while stack:
            node, done = stack.pop()
            if done or not node.children:
                yield node
                continue
            stack.append((node, True))
            for c in reversed(node.children):
                stack.append((c, False))


@dataclass(frozen=True)
class MDTree:
    root: MDNode
    source: Graph = field(compare=False)

    def nodes(self) -> list[MDNode]:
        return list(self.root.preorder())

    def node_masks(self) -> set[int]:
        return {node.mask for node in self.root.preorder()}

    def leaf_parents(self) -> dict[int, MDNode]:
        return {c.min_vertex: node for node in self.root.preorder()
                for c in node.children if c.is_leaf()}

    def parents(self) -> dict[int, MDNode | None]:
        """Map node mask to its parent node (None for the root)."""
        out: dict[int, MDNode | None] = {self.root.mask: None}
        for node in self.root.preorder():
            for c in node.children:
                out[c.mask] = node
        return out

    def smallest_containing(self, mask: int) -> MDNode:
        """The inclusion-minimal node whose vertex set contains ``mask``."""
        node = self.root
        if mask & ~node.mask:
            raise ValueError("vertex set is not inside the decomposed graph")
        while True:
            for c in node.children:
                if mask & ~c.mask == 0:
                    node = c
                    break
            else:
                return node

    def lca(self, x: int, y: int) -> MDNode:
        return self.smallest_containing((1 << x) | (1 << y))

    def has_prime(self) -> bool:
        return any(node.label is Label.PRIME for node in self.root.preorder())

    def __str__(self) -> str:
        from .io import serialize_mdtree

        return serialize_mdtree(self)


def _check_mask(g: Graph, m: int) -> int:
    if m == 0:
        raise ValueError("module candidate must be non-empty")
    if m & ~g.full_mask:
        raise ValueError(f"vertex set out of range for n={g.n}")
    return m


def module_violation(adj: tuple[int, ...], m: int, within: int) -> int | None:
    """A vertex of ``within`` outside ``m`` that splits ``m``, or None if ``m`` is a module."""
    x0 = lowest(m)
    outside = within & ~m
    ref = adj[x0] & outside
    for y in bits(m & (m - 1)):
        diff = (adj[y] & outside) ^ ref
        if diff:
            return lowest(diff)
    return None


def is_module_mask(adj: tuple[int, ...], m: int, within: int) -> bool:
    return module_violation(adj, m, within) is None


def is_module(g: Graph, m: Iterable[int] | int) -> bool:
    """True iff every member of ``m`` has the same neighbours outside ``m``."""
    mask = m if isinstance(m, int) else to_mask(m)
    _check_mask(g, mask)
    return is_module_mask(g.masks, mask, g.full_mask)


def module_closure(adj: tuple[int, ...], within: int, seed: int) -> int:
    """Smallest module of the subgraph induced by ``within`` that contains ``seed``."""
    v = lowest(seed)
    ref = adj[v]
    m = seed
    diff = 0
    fresh = seed & ~(1 << v)
    while fresh:
        for x in bits(fresh):
            diff |= adj[x] ^ ref
        fresh = diff & within & ~m
        m |= fresh
    return m


def enumerate_all_module_masks(g: Graph, bound: int = DEFAULT_ENUM_BOUND) -> list[int]:
    if g.n > bound:
        raise ValueError(f"module enumeration limited to n <= {bound}, got n={g.n}")
    return kernels.module_masks(g.masks, g.n)


def enumerate_all_modules(g: Graph, bound: int = DEFAULT_ENUM_BOUND) -> set[frozenset[int]]:
    """Every module of ``g`` (including the trivial ones), by exhaustive search."""
    return {to_set(m) for m in enumerate_all_module_masks(g, bound)}


def _overlap(a: int, b: int) -> bool:
    return bool(a & b) and bool(a & ~b) and bool(b & ~a)


def strong_module_masks_bruteforce(g: Graph, bound: int = DEFAULT_ENUM_BOUND) -> set[int]:
    """Modules overlapping no other module, filtered from the full enumeration."""
    mods = enumerate_all_module_masks(g, bound)
    return {m for m in mods if not any(_overlap(m, o) for o in mods)}


def _prime_partition(adj: tuple[int, ...], s: int) -> list[int]:
    """Maximal proper modules of G[s], assuming G[s] and its complement are connected.

    First the partition of ``s - {v}`` into maximal modules avoiding ``v`` is
    obtained by refinement.  Every child other than the one holding ``v`` is a
    block of it; a block lies in the child of ``v`` iff the smallest module
    containing it and ``v`` is proper.
    """
    v = lowest(s)
    rest = s & ~(1 << v)
    parts = [p for p in (rest & adj[v], rest & ~adj[v]) if p]
    queue = list(bits(rest))
    queued = rest
    while queue:
        w = queue.pop()
        queued &= ~(1 << w)
        nw = adj[w]
        new_parts = []
        for p in parts:
            if p & (p - 1) == 0 or p >> w & 1:
                new_parts.append(p)
                continue
            inside = p & nw
            if inside and inside != p:
                new_parts.append(inside)
                new_parts.append(p & ~nw)
                add = p & ~queued
                queued |= add
                queue.extend(bits(add))
            else:
                new_parts.append(p)
        parts = new_parts
    own = 1 << v
    others = []
    for p in parts:
        if module_closure(adj, s, (1 << v) | p) != s:
            own |= p
        else:
            others.append(p)
    return [own] + others


def _split(adj: tuple[int, ...], s: int) -> tuple[Label, list[int]]:
    comps = connected_components_mask(adj, s)
    if len(comps) > 1:
        return Label.PARALLEL, comps
    cocomps = co_components_mask(adj, s)
    if len(cocomps) > 1:
        return Label.SERIES, cocomps
    return Label.PRIME, _prime_partition(adj, s)


def decompose_masks(adj: tuple[int, ...], s: int) -> MDNode:
    """Modular decomposition of the subgraph induced by ``s`` (non-empty)."""
    # iterative post-order so deep cotrees do not hit the recursion limit
    built: dict[int, MDNode] = {}
    stack: list[tuple[int, Label | None, list[int] | None]] = [(s, None, None)]
    while stack:
        m, label, kids = stack.pop()
        if m & (m - 1) == 0:
            built[m] = MDNode(m, Label.LEAF)
            continue
        if label is None:
            label, kids = _split(adj, m)
            kids.sort(key=lowest)
            stack.append((m, label, kids))
            stack.extend((k, None, None) for k in kids)
            continue
        built[m] = MDNode(m, label, tuple(built.pop(k) for k in kids))
    return built[s]


def modular_decomposition_tree(g: Graph) -> MDTree:
    if g.n < 1:
        raise ValueError("modular decomposition needs at least one vertex")
    return MDTree(decompose_masks(g.masks, g.full_mask), g)


def maximal_modular_partition(g: Graph) -> list[frozenset[int]]:
    """The maximal proper strong modules of ``g``, ordered by minimum vertex."""
    if g.n < 2:
        raise ValueError("maximal modular partition needs at least two vertices")
    label, kids = _split(g.masks, g.full_mask)
    return [to_set(k) for k in sorted(kids, key=lowest)]


def quotient(g: Graph, blocks: Iterable[Iterable[int] | int]) -> tuple[Graph, list[frozenset[int]]]:
    """Quotient graph over disjoint modules; vertex ``i`` stands for ``blocks[i]``."""
    masks = [b if isinstance(b, int) else to_mask(b) for b in blocks]
    seen = 0
    for m in masks:
        _check_mask(g, m)
        if m & seen:
            raise ValueError("quotient blocks overlap")
        seen |= m
        bad = module_violation(g.masks, m, g.full_mask)
        if bad is not None:
            raise ValueError(f"block {sorted(bits(m))} is not a module (split by {bad})")
    return quotient_masks(g.masks, masks), [to_set(m) for m in masks]


def quotient_masks(adj: tuple[int, ...], masks: list[int]) -> Graph:
    reps = [adj[lowest(m)] for m in masks]
    k = len(masks)
    qadj = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if reps[i] & masks[j]:
                qadj[i] |= 1 << j
                qadj[j] |= 1 << i
    return Graph._trusted(k, tuple(qadj))


def node_quotient(g: Graph, node: MDNode) -> Graph:
    """Quotient of ``g`` over the children of ``node``."""
    return quotient_masks(g.masks, [c.mask for c in node.children])


def strong_modules(t: MDTree) -> set[frozenset[int]]:
    return {node.vertices for node in t.root.preorder()}


def prime_nodes_bottom_up(t: MDTree) -> list[MDNode]:
    """Prime nodes with every descendant listed before its ancestors."""
    return [node for node in t.root.postorder() if node.label is Label.PRIME]


def decompose_subgraph(g: Graph, s: Iterable[int]) -> MDTree:
    """Decomposition of ``g[s]`` expressed in the vertex ids of ``g``."""
    sub, mapping = induced_subgraph(g, s)
    t = modular_decomposition_tree(sub)

    def lift(node: MDNode) -> MDNode:
        mask = to_mask(mapping[i] for i in bits(node.mask))
        return MDNode(mask, node.label, tuple(lift(c) for c in node.children))

    return MDTree(lift(t.root), g)
