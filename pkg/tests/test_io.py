import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cgedit.graph import Graph
from cgedit.io import (
    FormatError,
    parse_edit_set,
    parse_graph,
    parse_mdtree,
    parse_trace,
    read_graph,
    serialize_edit_set,
    serialize_graph,
    serialize_mdtree,
    serialize_trace,
    tree_from_text,
)
from cgedit.merge import pairwise_merge_sequence
from cgedit.modules import modular_decomposition_tree
from conftest import HOST7, HOST7_EDITS, K2K2, P4, edit_sets, graphs


def test_parse_graph_examples():
    assert parse_graph("4 3\n0 1\n1 2\n2 3") == P4
    assert parse_graph("# hi\n\n4 3\n2 3\n1 0\n  2 1  \n") == P4


def test_serialize_graph_canonical():
    doc = "4 3\n2 3\n1 0\n1 2\n"
    assert serialize_graph(parse_graph(doc)) == "4 3\n0 1\n1 2\n2 3\n"
    assert serialize_graph(P4, ["x"]).startswith("# x\n")


@pytest.mark.parametrize("doc,msg,line", [
    ("2 1\n0 0", "self-loop", 2),
    ("2 1\n0 5", "out of range", 2),
    ("3 2\n0 1\n1 0", "duplicate", 3),
    ("3 x", "integers", 1),
    ("3", "header", 1),
    ("0 0", "positive", 1),
    ("3 2\n0 1", "announces", None),
    ("", "missing", None),
    ("3 1\n0 1 2", "edge", 2),
])
def test_parse_graph_errors(doc, msg, line):
    with pytest.raises(FormatError, match=msg) as err:
        parse_graph(doc)
    assert err.value.line == line


@settings(max_examples=100)
@given(graphs(min_n=1, max_n=12))
def test_graph_roundtrip(g):
    assert parse_graph(serialize_graph(g)) == g


def test_mdtree_text():
    assert serialize_mdtree(modular_decomposition_tree(Graph.complete(2))) == "S(0,1)"
    assert serialize_mdtree(modular_decomposition_tree(K2K2)) == "P(S(0,1),S(2,3))"
    assert serialize_mdtree(modular_decomposition_tree(P4)) == "PR(0,1,2,3)"
    assert serialize_mdtree(modular_decomposition_tree(Graph.empty(1))) == "0"


@pytest.mark.parametrize("text", ["P(0", "S(0)", "P(0,0)", "Q(0,1)", "P(0,1)x", "P(0 1)", "P(,0,1)", ""])
def test_parse_mdtree_errors(text):
    with pytest.raises(FormatError):
        parse_mdtree(text)


def test_parse_mdtree_sorts_children():
    assert serialize_mdtree(parse_mdtree("P(S(3,2),S(1,0))")) == "P(S(0,1),S(2,3))"


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=1, max_n=10))
def test_mdtree_roundtrip(g):
    t = modular_decomposition_tree(g)
    assert tree_from_text(serialize_mdtree(t), g).root == t.root


def test_tree_from_text_checks_vertices():
    with pytest.raises(FormatError, match="leaves"):
        tree_from_text("S(0,1)", P4)


def test_edit_set_format():
    assert serialize_edit_set({(3, 1), (0, 2)}) == "0 2\n1 3\n"
    assert serialize_edit_set(()) == ""
    assert parse_edit_set("") == frozenset()
    assert parse_edit_set("# c\n2 1\n") == frozenset({(1, 2)})
    with pytest.raises(FormatError, match="self-loop"):
        parse_edit_set("1 1")


@settings(max_examples=60)
@given(st.data())
def test_edit_set_roundtrip(data):
    f = data.draw(edit_sets(8))
    assert parse_edit_set(serialize_edit_set(f)) == f


def test_trace_roundtrip():
    trace = pairwise_merge_sequence(HOST7, HOST7_EDITS)
    text = serialize_trace(trace)
    assert text.splitlines()[2] == "1\t2\t0,1,2,3,4,5,6\t2-6"
    assert text.splitlines()[4] == "0,5\t4\t0,1,2,3,4,5,6\t-"
    back = parse_trace(text)
    assert back.steps == trace.steps and back.residual == trace.residual


def test_trace_residual_roundtrip():
    trace = pairwise_merge_sequence(P4, {(0, 1), (1, 2), (2, 3)})
    back = parse_trace(serialize_trace(trace))
    assert back.residual == frozenset({(0, 1), (1, 2), (2, 3)}) and back.steps == ()


@pytest.mark.parametrize("text", ["", "# other\n", "# merge-trace v1\n1\t2\n", "# merge-trace v1\na\tb\tc\t-\n",
                                  "# merge-trace v1\n1\t2\t1,2\tx-y\n"])
def test_trace_errors(text):
    with pytest.raises(FormatError):
        parse_trace(text)


def test_read_graph(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text(serialize_graph(P4))
    assert read_graph(str(p)) == P4
