"""Module merging: validating merges and splitting an edit set into merge steps.

Given a graph ``g`` and a module-preserving edit set ``f`` turning it into a
cograph ``h``, every strong module of ``h`` that is not a module of ``g`` sits
inside a smallest prime node of ``g`` (its host) and is a union of the host's
children.  Building those new modules bottom-up, two blocks at a time, splits
``f`` into per-step slices ``theta``; :func:`pairwise_merge_sequence` records
that process as a :class:`MergeTrace`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections.abc import Iterable

from .cograph import NotACograph, cograph_witness, cotree
from .graph import EditSet, Graph, apply_edits, bits, lowest, make_edit_set, popcount, to_mask, to_set
from .modules import (
    Label,
    MDTree,
    enumerate_all_module_masks,
    is_module_mask,
    modular_decomposition_tree,
    quotient_masks,
)

BRUTE_FORCE_BOUND = 10


class NotModulePreserving(ValueError):
    """Raised when an edit set breaks a module of the input; ``witness`` is that module."""

    def __init__(self, witness: frozenset[int]):
        self.witness = witness
        super().__init__(f"module {sorted(witness)} of the input is not a module after editing")


def _mask(s: Iterable[int] | int) -> int:
    return s if isinstance(s, int) else to_mask(s)


@dataclass(frozen=True)
class MergeSpec:
    """Disjoint parts whose union ``target`` should become a new module."""

    parts: tuple[frozenset[int], ...]
    target: frozenset[int] = field(default=frozenset())

    def __init__(self, parts: Iterable[Iterable[int]], target: Iterable[int] | None = None):
        ps = tuple(frozenset(p) for p in parts)
        if len(ps) < 2:
            raise ValueError("a merge needs at least two parts")
        union: set[int] = set()
        for p in ps:
            if not p:
                raise ValueError("merge parts must be non-empty")
            if union & p:
                raise ValueError("merge parts overlap")
            union |= p
        tgt = frozenset(union) if target is None else frozenset(target)
        if tgt != union:
            raise ValueError("merge target must be the union of its parts")
        object.__setattr__(self, "parts", ps)
        object.__setattr__(self, "target", tgt)


def merge_violation(g: Graph, h: Graph, spec: MergeSpec) -> str | None:
    """Why ``spec`` is not a merge from ``g`` to ``h``, or None when it is."""
    if g.n != h.n:
        raise ValueError("graphs have different vertex counts")
    for p in spec.parts:
        if not is_module_mask(h.masks, to_mask(p), h.full_mask):
            return f"part {sorted(p)} is not a module of the edited graph"
    t = to_mask(spec.target)
    if not is_module_mask(h.masks, t, h.full_mask):
        return f"target {sorted(spec.target)} is not a module of the edited graph"
    if is_module_mask(g.masks, t, g.full_mask):
        return f"target {sorted(spec.target)} is already a module of the original graph"
    return None


def validate_merge(g: Graph, h: Graph, spec: MergeSpec) -> bool:
    return merge_violation(g, h, spec) is None


def merge_edit_set(f: Iterable[Iterable[int]], host: Iterable[int] | int, target: Iterable[int] | int) -> EditSet:
    """Pairs of ``f`` with one end in ``target`` and the other in ``host - target``."""
    t = _mask(target)
    rest = _mask(host) & ~t
    if t & ~_mask(host):
        raise ValueError("merge target must lie inside the host vertex set")
    out = []
    for x, y in make_edit_set(f):
        if (t >> x & 1 and rest >> y & 1) or (t >> y & 1 and rest >> x & 1):
            out.append((x, y))
    return frozenset(out)


def check_module_preserving(g: Graph, f: Iterable[Iterable[int]], method: str = "auto"
                            ) -> tuple[bool, frozenset[int] | None]:
    """Whether every module of ``g`` is still a module of ``g`` edited by ``f``.

    ``method="bruteforce"`` tests every module from the exhaustive enumeration;
    ``"structural"`` tests every node of the decomposition tree and, for each
    parallel or series node, that the edited graph's quotient over its
    children is complete or edgeless (the remaining modules are unions of such
    children).  ``"auto"`` picks brute force up to ten vertices.  Returns
    ``(ok, witness)`` with a broken module as witness.
    """
    h = apply_edits(g, f)
    if method == "auto":
        method = "bruteforce" if g.n <= BRUTE_FORCE_BOUND else "structural"
    if g.n == 0:
        return True, None
    if method == "bruteforce":
        for m in enumerate_all_module_masks(g, bound=max(g.n, 1)):
            if not is_module_mask(h.masks, m, h.full_mask):
                return False, to_set(m)
        return True, None
    if method != "structural":
        raise ValueError(f"unknown method {method!r}")
    t = modular_decomposition_tree(g)
    for node in t.root.preorder():
        if not is_module_mask(h.masks, node.mask, h.full_mask):
            return False, node.vertices
    for node in t.root.preorder():
        if node.label in (Label.PRIME, Label.LEAF) or len(node.children) < 3:
            continue
        kids = [c.mask for c in node.children]
        q = quotient_masks(h.masks, kids)
        full = q.full_mask
        for a in range(q.n):
            nb = q.masks[a]
            others = full & ~(1 << a)
            if nb and nb != others:
                b, c = lowest(nb), lowest(others & ~nb)
                return False, to_set(kids[b] | kids[c])
    return True, None


@dataclass(frozen=True)
class SigmaEntry:
    """A new strong module, its host prime node in the input, and its edit slice."""

    module: frozenset[int]
    host: frozenset[int]
    sigma: EditSet


@dataclass(frozen=True)
class MergeStep:
    left: frozenset[int]
    right: frozenset[int]
    result: frozenset[int]
    theta: EditSet
    host_prime: frozenset[int]


@dataclass(frozen=True)
class MergeTrace:
    """Ordered merge steps; ``intermediates[l]`` is the graph after ``l`` steps."""

    steps: tuple[MergeStep, ...]
    intermediates: tuple[Graph, ...] = ()
    residual: EditSet = frozenset()

    @property
    def edits(self) -> EditSet:
        out: set = set()
        for s in self.steps:
            out |= s.theta
        return frozenset(out) | self.residual

    def replay(self, g: Graph) -> Graph:
        for s in self.steps:
            g = apply_edits(g, s.theta)
        return apply_edits(g, self.residual)


def _require_cograph_and_preserving(g: Graph, f: EditSet) -> Graph:
    h = apply_edits(g, f)
    q = cograph_witness(h)
    if q is not None:
        raise NotACograph(q, f"edited graph is not a cograph (P4 {q})")
    ok, witness = check_module_preserving(g, f)
    if not ok:
        raise NotModulePreserving(witness)
    return h


def _new_strong_modules(g: Graph, th: MDTree) -> list[int]:
    new = [node.mask for node in th.root.preorder()
           if not is_module_mask(g.masks, node.mask, g.full_mask)]
    new.sort(key=lambda m: (popcount(m), lowest(m)))
    return new


def _host(tg: MDTree, m: int) -> int:
    node = tg.smallest_containing(m)
    if node.label is not Label.PRIME:  # pragma: no cover - excluded by module preservation
        raise AssertionError("new module is not hosted by a prime node")
    return node.mask


def _crossing(f: EditSet, inner: int, host: int) -> set:
    rest = host & ~inner
    return {(x, y) for x, y in f
            if (inner >> x & 1 and rest >> y & 1) or (inner >> y & 1 and rest >> x & 1)}


def sigma_decomposition(g: Graph, f: Iterable[Iterable[int]]) -> list[SigmaEntry]:
    """Split ``f`` along the new strong modules of the edited graph.

    New modules are ordered by size, then minimum vertex, so every module
    comes after the ones it contains.  Slice ``i`` holds the pairs crossing the
    boundary of module ``i`` inside its host that no earlier slice took.
    """
    f = make_edit_set(f)
    h = _require_cograph_and_preserving(g, f)
    tg = modular_decomposition_tree(g)
    th = cotree(h)
    used: set = set()
    out = []
    for m in _new_strong_modules(g, th):
        host = _host(tg, m)
        sigma = _crossing(f, m, host) - used
        used |= sigma
        out.append(SigmaEntry(to_set(m), to_set(host), frozenset(sigma)))
    return out


def _x_partition_masks(tg: MDTree, th: MDTree, m: int) -> list[int]:
    hnode = th.smallest_containing(m)
    if hnode.mask != m:
        raise ValueError(f"{sorted(bits(m))} is not a strong module of the edited graph")
    host = tg.smallest_containing(m)
    if host.mask == m:
        raise ValueError(f"{sorted(bits(m))} is already a strong module of the original graph")
    tilde = [c.mask for c in hnode.children]
    hat = [c.mask for c in host.children if c.mask & ~m == 0]
    out = [t for t in tilde if any(c & ~t == 0 for c in hat)]
    out += [c for c in hat if any(t & ~c == 0 for t in tilde) and c not in out]
    out.sort(key=lowest)
    union = 0
    for b in out:
        if b & union:
            raise ValueError("merge blocks overlap; the edit set is not module-preserving")
        union |= b
    if union != m:
        raise ValueError("merge blocks do not cover the module; the edit set is not module-preserving")
    return out


def x_partition(g: Graph, h: Graph, m_star: Iterable[int]) -> list[frozenset[int]]:
    """Blocks to merge pairwise into ``m_star``, ordered by minimum vertex.

    Each block is either a child of ``m_star`` in the edited graph that
    contains a child of the host prime node of ``g``, or a host child that
    contains a child of ``m_star`` in the edited graph.
    """
    m = to_mask(m_star)
    if is_module_mask(g.masks, m, g.full_mask):
        raise ValueError(f"{sorted(m_star)} is already a module of the original graph")
    return [to_set(b) for b in _x_partition_masks(modular_decomposition_tree(g), cotree(h), m)]


def pairwise_merge_sequence(g: Graph, f: Iterable[Iterable[int]], optimal: bool = False) -> MergeTrace:
    """Realize ``f`` as a sequence of two-block merges.

    For every new strong module (inner ones first) its blocks are merged left
    to right.  A step whose result is already a module costs nothing;
    otherwise its ``theta`` is every unused pair of ``f`` crossing the
    result's boundary inside the host prime node.  Pairs of ``f`` no step
    claims end up in ``residual``; with ``optimal=True`` a non-empty residual,
    or a replay that misses the edited graph, raises ``ValueError``.
    """
    f = make_edit_set(f)
    h = _require_cograph_and_preserving(g, f)
    tg = modular_decomposition_tree(g)
    th = cotree(h)
    cur = g
    used: set = set()
    steps = []
    inter = [g]
    for m in _new_strong_modules(g, th):
        host = _host(tg, m)
        blocks = _x_partition_masks(tg, th, m)
        left = blocks[0]
        for right in blocks[1:]:
            n_star = left | right
            if is_module_mask(cur.masks, n_star, cur.full_mask):
                theta: frozenset = frozenset()
            else:
                theta = frozenset(_crossing(f, n_star, host) - used)
                used |= theta
                cur = apply_edits(cur, theta)
            steps.append(MergeStep(to_set(left), to_set(right), to_set(n_star), theta, to_set(host)))
            inter.append(cur)
            left = n_star
    residual = f - used
    if optimal:
        if residual:
            raise ValueError(f"edit pairs {sorted(residual)} are not claimed by any merge step")
        if cur != h:  # pragma: no cover - implied by an empty residual
            raise ValueError("merge steps do not reproduce the edited graph")
    return MergeTrace(tuple(steps), tuple(inter), frozenset(residual))


def audit_merge_trace(g: Graph, trace: MergeTrace) -> list[str]:
    """Problems found when checking each prefix of ``trace``; empty when it is sound.

    After step ``l``: every earlier result is a module, every module of ``g``
    is still a module, and a step with edits is a valid two-part merge.
    """
    problems = []
    cur = g
    done: list[int] = []
    cumulative: set = set()
    for l, step in enumerate(trace.steps, 1):
        prev = cur
        cur = apply_edits(cur, step.theta)
        cumulative |= step.theta
        if trace.intermediates and trace.intermediates[l] != cur:
            problems.append(f"step {l}: stored intermediate differs from replay")
        done.append(to_mask(step.result))
        for k, r in enumerate(done, 1):
            if not is_module_mask(cur.masks, r, cur.full_mask):
                problems.append(f"step {l}: result of step {k} is not a module")
        ok, witness = check_module_preserving(g, cumulative)
        if not ok:
            problems.append(f"step {l}: module {sorted(witness)} of the input broken")
        if step.theta:
            why = merge_violation(prev, cur, MergeSpec((step.left, step.right), step.result))
            if why is not None:
                problems.append(f"step {l}: {why}")
        host = to_mask(step.host_prime)
        res = to_mask(step.result)
        for x, y in step.theta:
            inside = (res >> x & 1) + (res >> y & 1)
            if inside != 1 or not (host >> x & 1 and host >> y & 1):
                problems.append(f"step {l}: edit ({x}, {y}) does not cross the result boundary inside its host")
    return problems


def merge_edits_union(g: Graph, f: Iterable[Iterable[int]]) -> EditSet:
    """Union, over new strong modules of the edited graph, of the pairs crossing each module in its host."""
    f = make_edit_set(f)
    out: set = set()
    for entry in sigma_decomposition(g, f):
        out |= merge_edit_set(f, entry.host, entry.module)
    return frozenset(out)
