"""Plain-text formats for graphs, decomposition trees, edit sets and merge traces.

Graph document::

    # comment lines start with '#'
    4 3          <- vertex count, edge count
    0 1
    1 2
    2 3

Trees are nested parentheses with labels ``S`` (series), ``P`` (parallel)
and ``PR`` (prime), e.g. ``P(S(0,1),S(2,3))``.  Edit sets are one ``x y`` pair
per line.  Traces are tab-separated ``left right host theta`` records.
"""

from __future__ import annotations

import re
from collections.abc import Iterable

from .graph import EditSet, Graph, lowest, make_edit_set
from .merge import MergeStep, MergeTrace
from .modules import Label, MDNode, MDTree

_TAGS = {Label.SERIES: "S", Label.PARALLEL: "P", Label.PRIME: "PR"}
_LABELS = {v: k for k, v in _TAGS.items()}
TRACE_HEADER = "# merge-trace v1"


class FormatError(ValueError):
    """Malformed input; ``line`` is the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, s


def _ints(s: str, count: int, no: int, what: str) -> list[int]:
    parts = s.split()
    if len(parts) != count:
        raise FormatError(f"expected {what}, got {s!r}", no)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"expected integers in {what}, got {s!r}", no) from None


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    try:
        no, header = next(lines)
    except StopIteration:
        raise FormatError("missing 'n m' header") from None
    n, m = _ints(header, 2, no, "header 'n m'")
    if n <= 0:
        raise FormatError(f"vertex count must be positive, got {n}", no)
    if m < 0:
        raise FormatError(f"edge count must be non-negative, got {m}", no)
    adj = [0] * n
    count = 0
    for no, s in lines:
        u, v = _ints(s, 2, no, "edge 'u v'")
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"endpoint out of range 0..{n - 1} in edge {u} {v}", no)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", no)
        if adj[u] >> v & 1:
            raise FormatError(f"duplicate edge {u} {v}", no)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        count += 1
    if count != m:
        raise FormatError(f"header announces {m} edges but {count} were given")
    return Graph._trusted(n, tuple(adj))


def serialize_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{g.n} {g.num_edges}")
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def _node_text(node: MDNode) -> str:
    # iterative to cope with deep trees
    parts: list[str] = []
    stack: list[object] = [node]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
            continue
        assert isinstance(item, MDNode)
        if item.is_leaf():
            parts.append(str(item.min_vertex))
            continue
        parts.append(_TAGS[item.label] + "(")
        stack.append(")")
        for i, c in enumerate(reversed(item.children)):
            stack.append(c)
            if i < len(item.children) - 1:
                stack.append(",")
    return "".join(parts)


def serialize_mdtree(t: MDTree | MDNode) -> str:
    return _node_text(t.root if isinstance(t, MDTree) else t)


_TOKEN = re.compile(r"\s*(?:(PR|P|S)\(|(\d+)|(,)|(\)))")


def parse_mdtree(text: str) -> MDNode:
    """Inverse of :func:`serialize_mdtree`; children are re-sorted by minimum vertex."""
    s = text.strip()
    pos = 0
    stack: list[tuple[Label, list[MDNode]]] = []
    root: MDNode | None = None
    expect_item = True
    while pos < len(s):
        mt = _TOKEN.match(s, pos)
        if not mt:
            raise FormatError(f"unexpected character at offset {pos}: {s[pos:pos + 10]!r}")
        pos = mt.end()
        tag, num, comma, close = mt.groups()
        if root is not None:
            raise FormatError(f"trailing text after the tree at offset {mt.start()}")
        if tag or num:
            if not expect_item:
                raise FormatError(f"missing ',' before offset {mt.start()}")
            if tag:
                stack.append((_LABELS[tag], []))
                continue
            leaf = MDNode(1 << int(num), Label.LEAF)
            expect_item = False
            if not stack:
                root = leaf
            else:
                stack[-1][1].append(leaf)
        elif comma:
            if expect_item or not stack:
                raise FormatError(f"misplaced ',' at offset {mt.start()}")
            expect_item = True
        else:
            if expect_item or not stack:
                raise FormatError(f"misplaced ')' at offset {mt.start()}")
            label, kids = stack.pop()
            if len(kids) < 2:
                raise FormatError("inner node needs at least two children")
            mask = 0
            for k in kids:
                if k.mask & mask:
                    raise FormatError("a vertex appears twice in the tree")
                mask |= k.mask
            node = MDNode(mask, label, tuple(sorted(kids, key=lambda c: lowest(c.mask))))
            if not stack:
                root = node
            else:
                stack[-1][1].append(node)
    if root is None or stack:
        raise FormatError("incomplete tree")
    return root


def serialize_edit_set(f: Iterable[Iterable[int]]) -> str:
    pairs = sorted(make_edit_set(f))
    return "".join(f"{x} {y}\n" for x, y in pairs)


def parse_edit_set(text: str) -> EditSet:
    pairs = []
    for no, s in _content_lines(text):
        x, y = _ints(s, 2, no, "pair 'x y'")
        if x == y:
            raise FormatError(f"pair {x} {y} is a self-loop", no)
        pairs.append((x, y))
    return make_edit_set(pairs)


def _vset(vs: Iterable[int]) -> str:
    return ",".join(map(str, sorted(vs)))


def _pairs(f: Iterable[tuple[int, int]]) -> str:
    items = sorted(f)
    return ",".join(f"{x}-{y}" for x, y in items) if items else "-"


def serialize_trace(trace: MergeTrace) -> str:
    out = [TRACE_HEADER, "# left\tright\thost\ttheta"]
    for s in trace.steps:
        out.append("\t".join((_vset(s.left), _vset(s.right), _vset(s.host_prime), _pairs(s.theta))))
    if trace.residual:
        out.append(f"residual\t{_pairs(trace.residual)}")
    return "\n".join(out) + "\n"


def _parse_vset(field: str, no: int) -> frozenset[int]:
    try:
        return frozenset(int(x) for x in field.split(","))
    except ValueError:
        raise FormatError(f"bad vertex list {field!r}", no) from None


def _parse_pairs(field: str, no: int) -> EditSet:
    if field == "-":
        return frozenset()
    try:
        return make_edit_set(tuple(int(v) for v in p.split("-")) for p in field.split(","))
    except ValueError:
        raise FormatError(f"bad pair list {field!r}", no) from None


def parse_trace(text: str) -> MergeTrace:
    lines = text.splitlines()
    if not lines or lines[0].strip() != TRACE_HEADER:
        raise FormatError(f"missing header {TRACE_HEADER!r}", 1)
    steps = []
    residual: EditSet = frozenset()
    for no, s in _content_lines(text):
        fields = s.split("\t")
        if fields[0] == "residual" and len(fields) == 2:
            residual = _parse_pairs(fields[1], no)
            continue
        if len(fields) != 4:
            raise FormatError("expected four tab-separated fields", no)
        left, right, host = (_parse_vset(x, no) for x in fields[:3])
        theta = _parse_pairs(fields[3], no)
        steps.append(MergeStep(left, right, left | right, theta, host))
    return MergeTrace(tuple(steps), (), residual)


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def tree_from_text(text: str, source: Graph) -> MDTree:
    root = parse_mdtree(text)
    if root.mask != source.full_mask:
        raise FormatError("tree leaves do not match the graph's vertices")
    return MDTree(root, source)


__all__ = [
    "FormatError",
    "parse_edit_set",
    "parse_graph",
    "parse_mdtree",
    "parse_trace",
    "read_graph",
    "serialize_edit_set",
    "serialize_graph",
    "serialize_mdtree",
    "serialize_trace",
    "tree_from_text",
]
