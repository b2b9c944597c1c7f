from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import strategies as st

from cgedit.graph import Graph


@lru_cache(maxsize=None)
def atlas(max_n: int) -> tuple[Graph, ...]:
    """One representative of every isomorphism class on 1..max_n vertices."""
    import networkx as nx

    out = []
    for G in nx.graph_atlas_g()[1:]:
        n = G.number_of_nodes()
        if n > max_n:
            break
        out.append(Graph.from_edges(n, G.edges()))
    return tuple(out)


def labeled_graphs(n: int):
    """Every labeled graph on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if bits >> i & 1])


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    from cgedit.generate import gnp

    return gnp(n, p, rng)


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, c in zip(pairs, chosen) if c])


@st.composite
def edit_sets(draw, n: int, max_size: int | None = None):
    pairs = list(itertools.combinations(range(n), 2))
    if not pairs:
        return frozenset()
    return frozenset(draw(st.lists(st.sampled_from(pairs), max_size=max_size or len(pairs), unique=True)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


P4 = Graph.path(4)
C5 = Graph.cycle(5)
K2K2 = Graph.from_edges(4, [(0, 1), (2, 3)])


# Seven-vertex graph with decomposition PR(S(0,5),1,2,3,4,6); its optimal edit
# set {(2,6),(4,6)} needs two paid merges and two free ones.
HOST7 = Graph.from_edges(7, [(0, 3), (0, 4), (0, 5), (0, 6), (1, 2), (1, 3), (1, 6), (2, 3), (3, 4), (3, 5),
                             (4, 5), (5, 6)])
HOST7_EDITS = frozenset({(2, 6), (4, 6)})

# Optimal edit set {(2,4),(3,5)} of this graph breaks the module {4,5}.
BREAKER6 = Graph.from_edges(6, [(0, 2), (1, 3), (2, 4), (2, 5), (3, 4), (3, 5)])
BREAKER6_EDITS = frozenset({(2, 4), (3, 5)})


def merge_theory_problems(g: Graph, f) -> list[str]:
    """Every check of the merge calculus for an optimal module-preserving ``f``."""
    from cgedit.graph import apply_edits, induced_subgraph
    from cgedit.merge import audit_merge_trace, merge_edits_union, pairwise_merge_sequence, sigma_decomposition
    from cgedit.modules import is_module

    out = []
    f = frozenset(f)
    h = apply_edits(g, f)
    if merge_edits_union(g, f) != f:
        out.append("merge-edit reconstruction differs from f")
    entries = sigma_decomposition(g, f)
    if sum(len(e.sigma) for e in entries) != len(f):
        out.append("sigma sizes do not sum to |f|")
    acc: set = set()
    for j, e in enumerate(entries):
        acc |= e.sigma
        gj = apply_edits(g, acc)
        for i in range(j + 1):
            mi = sorted(entries[i].module)
            if induced_subgraph(gj, mi)[0] != induced_subgraph(h, mi)[0]:
                out.append(f"prefix {j}: subgraph on {mi} differs from the edited graph")
            if not is_module(gj, mi):
                out.append(f"prefix {j}: {mi} is not a module")
    trace = pairwise_merge_sequence(g, f, optimal=True)
    if trace.replay(g) != h or trace.residual:
        out.append("trace does not replay to the edited graph")
    thetas = [s.theta for s in trace.steps]
    if sum(map(len, thetas)) != len(f) or frozenset().union(*thetas) != f:
        out.append("thetas are not a disjoint cover of f")
    out.extend(audit_merge_trace(g, trace))
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
