"""Cograph editing by merging modules.

Modular decomposition, cograph recognition, the module-merge calculus and
exact, greedy and randomized cograph editors.
"""

from .cograph import NotACograph, cotree, cotree_to_graph, find_p4, is_cograph
from .editing import (
    EditResult,
    brute_force_optimal_edit,
    edit,
    exact_edit,
    heuristic_edit,
    heuristic_edit_randomized,
    random_pair_edit,
    verify_edit_result,
)
from .graph import Graph, apply_edits, complement, induced_subgraph
from .kernels import IMPL as KERNEL_IMPL
from .merge import check_module_preserving, pairwise_merge_sequence, sigma_decomposition
from .modules import MDNode, MDTree, is_module, modular_decomposition_tree

__version__ = "0.1.0"

__all__ = [
    "KERNEL_IMPL",
    "EditResult",
    "Graph",
    "MDNode",
    "MDTree",
    "NotACograph",
    "apply_edits",
    "brute_force_optimal_edit",
    "check_module_preserving",
    "complement",
    "cotree",
    "cotree_to_graph",
    "edit",
    "exact_edit",
    "find_p4",
    "heuristic_edit",
    "heuristic_edit_randomized",
    "induced_subgraph",
    "is_cograph",
    "is_module",
    "modular_decomposition_tree",
    "pairwise_merge_sequence",
    "random_pair_edit",
    "sigma_decomposition",
    "verify_edit_result",
]
