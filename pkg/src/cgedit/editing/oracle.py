"""Exhaustive minimum cograph editing, used as the reference for everything else.

The search deepens the edit budget one pair at a time.  At each node it takes
the first induced P4 and branches on its six pairs: any solution must flip
one of them.  A pair that has been tried is frozen for its later siblings,
so every edit set is reached at most once and the enumeration of all optima
is complete.
"""

from __future__ import annotations

from itertools import combinations

from .. import kernels
from ..cograph import is_cograph
from ..graph import EditSet, Graph, apply_edits
from .result import EditResult, SearchBoundExceeded

SINGLE_BOUND = 8
ALL_BOUND = 6


def _check_bound(g: Graph, bound: int) -> None:
    if g.n > bound:
        raise SearchBoundExceeded(f"brute-force editing limited to n <= {bound}, got n={g.n}")


def optimal_cost(g: Graph, bound: int = SINGLE_BOUND) -> int:
    return brute_force_optimal_edit(g, bound=bound).cost


def brute_force_optimal_edit(g: Graph, enumerate_all: bool = False, bound: int | None = None):
    """Minimum cograph edit set of ``g``.

    Returns an :class:`EditResult` or, with ``enumerate_all``, the sorted list
    of every optimal edit set.  Sizes above ``bound`` (8 for one optimum, 6 for
    all) raise :class:`SearchBoundExceeded`.
    """
    _check_bound(g, bound if bound is not None else (ALL_BOUND if enumerate_all else SINGLE_BOUND))
    max_budget = g.n * (g.n - 1) // 2
    for budget in range(max_budget + 1):
        found = kernels.unit_edit_search(g.masks, g.n, budget, enumerate_all)
        if found:
            if enumerate_all:
                return sorted(sorted(f) for f in found)
            return EditResult.build(g, found[0], "bruteforce")
    raise AssertionError("unreachable: the complete graph is a cograph")  # pragma: no cover


def all_optimal_edit_sets(g: Graph, bound: int = ALL_BOUND) -> list[EditSet]:
    return [frozenset(f) for f in brute_force_optimal_edit(g, enumerate_all=True, bound=bound)]


def naive_optimal_edit_sets(g: Graph) -> tuple[int, list[EditSet]]:
    """Optimum and all optimal sets by plain subset enumeration (tiny graphs only)."""
    if g.n > 6:
        raise SearchBoundExceeded("plain subset enumeration limited to n <= 6")
    pairs = list(combinations(range(g.n), 2))
    for k in range(len(pairs) + 1):
        sols = [frozenset(c) for c in combinations(pairs, k) if is_cograph(apply_edits(g, c))]
        if sols:
            return k, sols
    raise AssertionError("unreachable")  # pragma: no cover
