from __future__ import annotations

from dataclasses import dataclass, field

from ..cograph import cograph_witness
from ..graph import Graph, apply_edits
from ..merge import audit_merge_trace, check_module_preserving
from .result import EditResult


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""
    required: bool = True


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks if c.required)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self) -> str:
        lines = []
        for c in self.checks:
            status = "ok" if c.ok else ("FAIL" if c.required else "note")
            lines.append(f"{status:4} {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)


def verify_edit_result(g: Graph, r: EditResult, deep_trace: bool = False) -> VerifyReport:
    """Re-check an edit result from first principles.

    Module preservation is reported for every method but only required for
    the merge-based ones; an optimum from the brute-force search may break
    modules.  ``deep_trace`` also audits every prefix of the trace.
    """
    checks = []
    expected = apply_edits(g, r.edits)
    checks.append(Check("result_matches", expected == r.result_graph,
                        "" if expected == r.result_graph else "result graph differs from input edited by the edit set"))
    q = cograph_witness(r.result_graph)
    checks.append(Check("cograph", q is None, "" if q is None else f"induced P4 {' '.join(map(str, q))}"))
    ok, witness = check_module_preserving(g, r.edits)
    checks.append(Check("module_preserving", ok, "" if ok else f"module {sorted(witness)} broken",
                        required=r.method != "bruteforce"))
    checks.append(Check("cost", r.cost == len(r.edits), f"cost {r.cost}, {len(r.edits)} edits"))
    if r.trace is not None:
        replay = r.trace.replay(g)
        disjoint = sum(len(s.theta) for s in r.trace.steps) + len(r.trace.residual) == len(r.trace.edits)
        good = replay == r.result_graph and disjoint and r.trace.edits == r.edits
        detail = "" if good else "trace does not replay to the result with disjoint slices"
        if good and deep_trace:
            problems = audit_merge_trace(g, r.trace)
            good = not problems
            detail = "; ".join(problems[:3])
        checks.append(Check("trace", good, detail))
    return VerifyReport(tuple(checks))
