"""Cograph editing solvers."""

from .exact import exact_edit, weighted_quotient_cograph_edit
from .heuristic import (
    GreedyState,
    heuristic_edit,
    heuristic_edit_randomized,
    random_pair_edit,
)
from .oracle import all_optimal_edit_sets, brute_force_optimal_edit, optimal_cost
from .result import METHODS, EditResult, SearchBoundExceeded
from .verify import VerifyReport, verify_edit_result


def edit(g, method: str = "exact", seed: int = 0) -> EditResult:
    """Run the solver named ``method`` (one of :data:`METHODS`)."""
    if method == "bruteforce":
        return brute_force_optimal_edit(g)
    if method == "exact":
        return exact_edit(g)
    if method == "greedy":
        return heuristic_edit(g)
    if method == "greedy-rand":
        return heuristic_edit_randomized(g, seed=seed)
    if method == "random-pair":
        return random_pair_edit(g, seed=seed)
    raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")


__all__ = [
    "METHODS",
    "EditResult",
    "GreedyState",
    "SearchBoundExceeded",
    "VerifyReport",
    "all_optimal_edit_sets",
    "brute_force_optimal_edit",
    "edit",
    "exact_edit",
    "heuristic_edit",
    "heuristic_edit_randomized",
    "optimal_cost",
    "random_pair_edit",
    "verify_edit_result",
    "weighted_quotient_cograph_edit",
]
