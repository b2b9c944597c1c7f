"""Cograph recognition, cotrees and the triple set of a graph."""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .graph import Graph, bits, co_components_mask, connected_components_mask, lowest, popcount
from .modules import Label, MDNode, MDTree, modular_decomposition_tree

P4 = tuple[int, int, int, int]


class NotACograph(ValueError):
    """Raised when a cograph was required; ``witness`` is an induced P4 ``(a, b, c, d)``."""

    def __init__(self, witness: P4, message: str | None = None):
        self.witness = witness
        super().__init__(message or f"graph contains an induced P4 {witness}")


class MalformedCotree(ValueError):
    pass


def find_p4(g: Graph) -> P4 | None:
    """An induced path ``a-b-c-d`` or None when ``g`` is P4-free.

    Deterministic: the first path in a fixed scan order, oriented so that
    ``a < d``.
    """
    return kernels.find_p4(g.masks, g.n)


def is_p4(g: Graph, q) -> bool:
    a, b, c, d = q
    if len({a, b, c, d}) != 4:
        return False
    return (g.adj(a, b) and g.adj(b, c) and g.adj(c, d)
            and not g.adj(a, c) and not g.adj(a, d) and not g.adj(b, d))


def cograph_witness(g: Graph) -> P4 | None:
    """None for a cograph, else an induced P4.

    Small graphs use the compiled scan; larger ones the cotree construction,
    which only searches for a path inside the part that fails to split.
    """
    if g.n <= kernels.MAX_COMPILED_N:
        return find_p4(g)
    try:
        cotree(g)
    except NotACograph as exc:
        return exc.witness
    return None


def is_cograph(g: Graph) -> bool:
    return cograph_witness(g) is None


def cotree(g: Graph) -> MDTree:
    """Cotree of a cograph, built by alternating component / co-component splits.

    Raises :class:`NotACograph` with a P4 witness as soon as a vertex set with
    connected complement and connected induced subgraph turns up.
    """
    if g.n < 1:
        raise ValueError("cotree needs at least one vertex")
    adj = g.masks
    built: dict[int, MDNode] = {}
    stack: list[tuple[int, Label | None, list[int] | None]] = [(g.full_mask, None, None)]
    while stack:
        m, label, kids = stack.pop()
        if m & (m - 1) == 0:
            built[m] = MDNode(m, Label.LEAF)
            continue
        if label is None:
            kids = connected_components_mask(adj, m)
            label = Label.PARALLEL
            if len(kids) == 1:
                kids = co_components_mask(adj, m)
                label = Label.SERIES
                if len(kids) == 1:
                    raise NotACograph(_witness_in(g, m))
            kids.sort(key=lowest)
            stack.append((m, label, kids))
            stack.extend((k, None, None) for k in kids)
            continue
        built[m] = MDNode(m, label, tuple(built.pop(k) for k in kids))
    return MDTree(built[g.full_mask], g)


def _witness_in(g: Graph, m: int) -> P4:
    from .graph import induced_subgraph

    sub, mapping = induced_subgraph(g, bits(m))
    q = find_p4(sub)
    if q is None:  # pragma: no cover - connected with connected complement always has a P4
        raise AssertionError("no P4 found in a prime vertex set")
    a, b, c, d = (mapping[x] for x in q)
    return (a, b, c, d) if a < d else (d, c, b, a)


def validate_cotree(t: MDTree | MDNode, n: int | None = None) -> MDNode:
    """Check labels, alternation, partition structure; return the root."""
    root = t.root if isinstance(t, MDTree) else t
    seen = 0
    for node in root.preorder():
        if node.is_leaf():
            if node.children or popcount(node.mask) != 1:
                raise MalformedCotree(f"leaf node with vertex set {sorted(bits(node.mask))}")
            if node.mask & seen:
                raise MalformedCotree(f"vertex {lowest(node.mask)} appears twice")
            seen |= node.mask
            continue
        if node.label not in (Label.PARALLEL, Label.SERIES):
            raise MalformedCotree(f"cotree node labelled {node.label.value}")
        if len(node.children) < 2:
            raise MalformedCotree("inner cotree node with fewer than two children")
        union = 0
        for c in node.children:
            if c.mask & union:
                raise MalformedCotree("children of a cotree node overlap")
            union |= c.mask
            if c.label is node.label:
                raise MalformedCotree(f"{node.label.value} node has a {c.label.value} child")
        if union != node.mask:
            raise MalformedCotree("children do not partition their parent")
    if n is not None and seen != (1 << n) - 1:
        raise MalformedCotree(f"leaves do not cover 0..{n - 1}")
    if seen != root.mask or (seen + 1) & seen:
        raise MalformedCotree("leaves must be exactly the vertices 0..n-1")
    return root


def cotree_to_graph(t: MDTree | MDNode) -> Graph:
    """Graph with ``xy`` an edge iff the lowest common ancestor of ``x, y`` is series."""
    root = validate_cotree(t)
    n = popcount(root.mask)
    adj = [0] * n
    for node in root.preorder():
        if node.label is not Label.SERIES:
            continue
        for c in node.children:
            across = node.mask & ~c.mask
            for v in bits(c.mask):
                adj[v] |= across
    return Graph._trusted(n, tuple(adj))


@dataclass(frozen=True, order=True)
class Triple:
    """Rooted triple ``xy|z``: ``x`` and ``y`` are closer to each other than to ``z``."""

    x: int
    y: int
    z: int

    def __post_init__(self):
        if len({self.x, self.y, self.z}) != 3:
            raise ValueError("triple needs three distinct vertices")
        if self.x > self.y:
            a, b = self.y, self.x
            object.__setattr__(self, "x", a)
            object.__setattr__(self, "y", b)

    def __str__(self) -> str:
        return f"{self.x}{self.y}|{self.z}"


def triple_set(g: Graph) -> set[Triple]:
    """Triples ``xy|z`` where ``z`` is adjacent to both or neither and ``xy`` is the opposite."""
    out = set()
    n = g.n
    for x in range(n):
        for y in range(x + 1, n):
            exy = g.adj(x, y)
            for z in range(n):
                if z == x or z == y:
                    continue
                xz, yz = g.adj(x, z), g.adj(y, z)
                if xz == yz and xz != exy:
                    out.add(Triple(x, y, z))
    return out


def displays(t: MDTree, r: Triple) -> bool:
    """True iff lca(x, y) lies strictly below lca(x, z) = lca(y, z)."""
    low = t.lca(r.x, r.y)
    top = t.lca(r.x, r.z)
    if t.lca(r.y, r.z).mask != top.mask:
        return False
    return low.mask != top.mask and low.mask & ~top.mask == 0


def recognize_all_ways(g: Graph) -> tuple[bool, bool, bool]:
    """``(P4-free, decomposition prime-free, cotree builds)``; all three agree on every graph."""
    p4_free = find_p4(g) is None
    prime_free = not modular_decomposition_tree(g).has_prime() if g.n else True
    try:
        cotree(g)
        builds = True
    except NotACograph:
        builds = False
    return p4_free, prime_free, builds
