from __future__ import annotations

from dataclasses import dataclass

from ..graph import EditSet, Graph, apply_edits, make_edit_set
from ..merge import MergeTrace

METHODS = ("bruteforce", "exact", "greedy", "greedy-rand", "random-pair")


class SearchBoundExceeded(RuntimeError):
    """An exact search was asked to go beyond its configured size or node bound."""


@dataclass(frozen=True)
class EditResult:
    edits: EditSet
    result_graph: Graph
    cost: int
    method: str
    trace: MergeTrace | None = None

    @classmethod
    def build(cls, g: Graph, edits, method: str, trace: MergeTrace | None = None) -> EditResult:
        f = make_edit_set(edits)
        return cls(f, apply_edits(g, f), len(f), method, trace)

    def sorted_edits(self) -> list[tuple[int, int]]:
        return sorted(self.edits)
