"""Simple undirected graphs on dense vertex ids, stored as adjacency bitmasks.

Every vertex ``v`` of a :class:`Graph` owns a Python ``int`` whose bit ``u`` is
set iff ``uv`` is an edge.  Graphs are immutable; all editing operations
return new graphs.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

Pair = tuple[int, int]
EditSet = frozenset[Pair]


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def to_set(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def make_edit_set(pairs: Iterable[Iterable[int]]) -> EditSet:
    """Normalise ``pairs`` into an edit set of sorted 2-tuples.

    Raises ``ValueError`` on a pair with equal endpoints.  Duplicates under
    unordering collapse.
    """
    out = set()
    for p in pairs:
        x, y = p
        x, y = int(x), int(y)
        if x == y:
            raise ValueError(f"edit pair ({x}, {y}) is a self-loop")
        out.add((x, y) if x < y else (y, x))
    return frozenset(out)


class Graph:
    """Immutable simple undirected loop-free graph on vertices ``0..n-1``."""

    __slots__ = ("_n", "_adj", "_hash")

    def __init__(self, n: int, adjacency: Iterable[int] | None = None):
        adj = (0,) * n if adjacency is None else tuple(adjacency)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(adj) != n:
            raise ValueError(f"expected {n} adjacency masks, got {len(adj)}")
        full = (1 << n) - 1
        for v, a in enumerate(adj):
            if a & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{n - 1}")
            if a >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for v, a in enumerate(adj):
            for u in bits(a):
                if not adj[u] >> v & 1:
                    raise ValueError(f"adjacency is not symmetric at ({v}, {u})")
        self._n = n
        self._adj = adj
        self._hash = None

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> Graph:
        g = object.__new__(cls)
        g._n = n
        g._adj = adj
        g._hash = None
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> Graph:
        adj = [0] * n
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls._trusted(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls._trusted(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls._trusted(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @property
    def n(self) -> int:
        return self._n

    @property
    def masks(self) -> tuple[int, ...]:
        """Adjacency bitmask of every vertex."""
        return self._adj

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    def adj(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return to_set(self._adj[v])

    def degree(self, v: int) -> int:
        return popcount(self._adj[v])

    def edges(self) -> list[Pair]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self._n) for v in bits(self._adj[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(popcount(a) for a in self._adj) // 2

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.edges()})"

    def to_numpy(self):
        import numpy as np

        m = np.zeros((self._n, self._n), dtype=bool)
        for u, v in self.edges():
            m[u, v] = m[v, u] = True
        return m


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph._trusted(g.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(g.masks)))


def _check_vertices(g: Graph, vertices: Iterable[int]) -> list[int]:
    vs = sorted(set(int(v) for v in vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    return vs


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``(g[s], mapping)`` where ``mapping[i]`` is the id in ``g`` of new vertex ``i``.

    New ids follow the increasing order of the original ids.
    """
    vs = _check_vertices(g, s)
    index = {v: i for i, v in enumerate(vs)}
    adj = []
    for v in vs:
        a = 0
        for u in bits(g.masks[v]):
            i = index.get(u)
            if i is not None:
                a |= 1 << i
        adj.append(a)
    return Graph._trusted(len(vs), tuple(adj)), tuple(vs)


def connected_components_mask(adj: tuple[int, ...], within: int) -> list[int]:
    """Connected components of the subgraph induced by ``within``, as masks."""
    comps = []
    rest = within
    while rest:
        frontier = rest & -rest
        comp = frontier
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & within & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def co_components_mask(adj: tuple[int, ...], within: int) -> list[int]:
    """Connected components of the complement of the subgraph induced by ``within``."""
    comps = []
    rest = within
    while rest:
        frontier = rest & -rest
        comp = frontier
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= within & ~adj[v] & ~(1 << v)
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Blocks of the connected-component partition, ordered by minimum vertex."""
    return [to_set(c) for c in connected_components_mask(g.masks, g.full_mask)]


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components_mask(g.masks, g.full_mask)) == 1


def apply_edits(g: Graph, f: Iterable[Iterable[int]]) -> Graph:
    """Return ``g`` with every pair of ``f`` flipped (the graph ``G △ F``)."""
    adj = list(g.masks)
    for x, y in make_edit_set(f):
        if not (0 <= x < g.n and 0 <= y < g.n):
            raise ValueError(f"edit pair ({x}, {y}) out of range for n={g.n}")
        adj[x] ^= 1 << y
        adj[y] ^= 1 << x
    return Graph._trusted(g.n, tuple(adj))


def symmetric_difference(g: Graph, h: Graph) -> EditSet:
    """The edit set ``F`` with ``g △ F = h``."""
    if g.n != h.n:
        raise ValueError("graphs have different vertex counts")
    out = []
    for u in range(g.n):
        diff = (g.masks[u] ^ h.masks[u]) >> (u + 1)
        for v in bits(diff):
            out.append((u, u + 1 + v))
    return frozenset(out)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Side-by-side copy: vertices of ``h`` are shifted by ``g.n``."""
    shift = g.n
    adj = list(g.masks) + [a << shift for a in h.masks]
    return Graph._trusted(g.n + h.n, tuple(adj))


def join(g: Graph, h: Graph) -> Graph:
    shift = g.n
    left = ((1 << h.n) - 1) << shift
    right = g.full_mask
    adj = [a | left for a in g.masks] + [(a << shift) | right for a in h.masks]
    return Graph._trusted(g.n + h.n, tuple(adj))


def relabel(g: Graph, perm: list[int] | tuple[int, ...]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    adj = [0] * g.n
    for u, v in g.edges():
        a, b = perm[u], perm[v]
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return Graph._trusted(g.n, tuple(adj))
