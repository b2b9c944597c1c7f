import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cgedit.cograph import is_cograph
from cgedit.editing import (
    GreedyState,
    SearchBoundExceeded,
    all_optimal_edit_sets,
    brute_force_optimal_edit,
    edit,
    exact_edit,
    heuristic_edit,
    heuristic_edit_randomized,
    optimal_cost,
    random_pair_edit,
    verify_edit_result,
    weighted_quotient_cograph_edit,
)
from cgedit.editing.heuristic import AuditFailure, greedy_merges, random_pair_merges
from cgedit.editing.oracle import naive_optimal_edit_sets
from cgedit.editing.result import EditResult
from cgedit.generate import generate_perturbed_cograph
from cgedit.graph import Graph, apply_edits, connected_components, induced_subgraph
from cgedit.merge import check_module_preserving
from cgedit.modules import Label, enumerate_all_modules, modular_decomposition_tree
from conftest import C5, K2K2, P4, atlas, graphs


# oracle

def test_oracle_examples():
    r = brute_force_optimal_edit(P4)
    assert r.cost == 1 and is_cograph(r.result_graph)
    assert is_cograph(apply_edits(P4, {(0, 3)}))
    assert brute_force_optimal_edit(K2K2).edits == frozenset()
    assert optimal_cost(C5) == 2
    assert not any(is_cograph(apply_edits(C5, {p})) for p in itertools.combinations(range(5), 2))


def test_oracle_bounds():
    with pytest.raises(SearchBoundExceeded):
        brute_force_optimal_edit(Graph.path(9))
    with pytest.raises(SearchBoundExceeded):
        all_optimal_edit_sets(Graph.path(7))
    with pytest.raises(SearchBoundExceeded):
        naive_optimal_edit_sets(Graph.path(7))


def test_all_optima_of_p4_are_the_six_single_flips():
    assert all_optimal_edit_sets(P4) == [frozenset({p}) for p in itertools.combinations(range(4), 2)]


@pytest.mark.parametrize("g", atlas(5), ids=lambda g: f"n{g.n}m{g.num_edges}")
def test_branching_oracle_matches_subset_enumeration(g):
    k, sols = naive_optimal_edit_sets(g)
    assert optimal_cost(g) == k
    assert sorted(map(sorted, all_optimal_edit_sets(g))) == sorted(map(sorted, sols))


@pytest.mark.parametrize("g", atlas(5), ids=lambda g: f"n{g.n}m{g.num_edges}")
def test_optimal_sets_edit_modules_optimally(g):
    mods = [m for m in enumerate_all_modules(g) if 1 < len(m) < g.n]
    for f in all_optimal_edit_sets(g):
        for m in mods:
            inside = [p for p in f if p[0] in m and p[1] in m]
            assert len(inside) == optimal_cost(induced_subgraph(g, sorted(m))[0])


@pytest.mark.parametrize("g", atlas(5), ids=lambda g: f"n{g.n}m{g.num_edges}")
def test_no_optimal_insertion_joins_components(g):
    comp = {v: i for i, c in enumerate(connected_components(g)) for v in c}
    for f in all_optimal_edit_sets(g):
        assert all(comp[x] == comp[y] for x, y in f)


# exact

def test_exact_examples():
    assert exact_edit(P4).cost == 1
    assert exact_edit(C5).cost == 2
    r = exact_edit(K2K2)
    assert r.cost == 0 and r.trace.steps == ()


def test_exact_bounds():
    with pytest.raises(SearchBoundExceeded, match="children"):
        exact_edit(P4, max_children=3)
    with pytest.raises(SearchBoundExceeded):
        exact_edit(Graph.cycle(9), node_limit=1)


def test_weighted_quotient_examples():
    assert weighted_quotient_cograph_edit(P4, [[int(a != b) for b in range(4)] for a in range(4)])[0] == 1
    w = {p: 1 for p in itertools.combinations(range(4), 2)}
    w[(0, 3)] = 5
    cost, pairs = weighted_quotient_cograph_edit(P4, w)
    assert cost == 1 and (0, 3) not in pairs and is_cograph(apply_edits(P4, pairs))
    unit = [[int(a != b) for b in range(5)] for a in range(5)]
    assert weighted_quotient_cograph_edit(C5, unit)[0] == 2
    with pytest.raises(ValueError, match="positive integer"):
        weighted_quotient_cograph_edit(P4, {(0, 1): 1})


@settings(max_examples=120, deadline=None)
@given(graphs(min_n=1, max_n=7))
def test_exact_matches_oracle(g):
    r = exact_edit(g)
    assert r.cost == optimal_cost(g)
    assert verify_edit_result(g, r, deep_trace=True).ok


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=2, max_n=5), st.integers(0, 2**31))
def test_weighted_quotient_matches_weighted_bruteforce(g, seed):
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(g.n), 2))
    w = {p: int(rng.integers(1, 5)) for p in pairs}
    best = min(sum(w[p] for p in c) for k in range(len(pairs) + 1)
               for c in itertools.combinations(pairs, k) if is_cograph(apply_edits(g, c)))
    cost, got = weighted_quotient_cograph_edit(g, w)
    assert cost == best == sum(w[p] for p in got)


# greedy

def test_greedy_on_p4():
    st_ = GreedyState(P4.to_numpy(), [1] * 4, range(4))
    a = st_.A
    assert a[0, 1] == a[0, 2] == a[1, 3] == a[2, 3] == 1
    assert a[0, 3] == a[1, 2] == 2
    assert st_.best_pair() == (0, 1)
    r = heuristic_edit(P4)
    assert r.edits == frozenset({(1, 2)}) and r.cost == 1


def test_greedy_on_c5_and_cographs():
    r = heuristic_edit(C5)
    assert is_cograph(r.result_graph) and r.cost >= 2
    assert r.cost == 3
    assert heuristic_edit(K2K2).cost == 0


def test_greedy_tie_break_modes():
    r = heuristic_edit(C5, tie_break="seeded", seed=3)
    assert is_cograph(r.result_graph)
    assert r == heuristic_edit(C5, tie_break="seeded", seed=3)
    with pytest.raises(ValueError, match="tie_break"):
        heuristic_edit(P4, tie_break="coin")


def test_greedy_timings_recorded():
    t = {}
    heuristic_edit(C5, timings=t)
    assert set(t) == {"decomposition", "editing"} and min(t.values()) >= 0


def test_audit_catches_corruption():
    st_ = GreedyState(C5.to_numpy(), [1] * 5, range(5))
    st_.merge(0, 1)
    st_.A[2, 3] += 1
    st_.A[3, 2] += 1
    with pytest.raises(AuditFailure):
        st_.check()


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 14), st.floats(0.1, 0.9), st.integers(0, 2**32 - 1))
def test_incremental_costs_match_scratch(k, p, seed):
    rng = np.random.default_rng(seed)
    q = np.triu(rng.random((k, k)) < p, 1)
    q = q | q.T
    sizes = rng.integers(1, 4, size=k).tolist()
    minids = list(range(k))
    plain = greedy_merges(q, sizes, minids, audit=True)
    tensor = greedy_merges(q, sizes, minids, audit=True, keep_tensor=True)
    assert plain == tensor


def _prime_lca(g, f):
    t = modular_decomposition_tree(g)
    return all(t.lca(x, y).label is Label.PRIME for x, y in f)


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=1, max_n=8))
def test_heuristics_are_safe(g):
    opt = exact_edit(g, with_trace=False).cost
    for r in (heuristic_edit(g, audit=True), heuristic_edit_randomized(g, seed=1), random_pair_edit(g, seed=1)):
        assert is_cograph(r.result_graph)
        assert check_module_preserving(g, r.edits)[0]
        assert _prime_lca(g, r.edits)
        assert r.cost >= opt
    assert heuristic_edit(g, audit=True).edits == heuristic_edit(g).edits


def test_randomized_contract():
    assert heuristic_edit_randomized(C5, seed=4) == heuristic_edit_randomized(C5, seed=4)
    costs = [heuristic_edit_randomized(P4, seed=s).cost for s in range(300)]
    assert min(costs) == 1 and all(c >= 1 for c in costs)
    assert all(heuristic_edit_randomized(K2K2, seed=s).cost == 0 for s in range(20))


def test_random_pair_contract():
    costs = {random_pair_edit(P4, seed=s).cost for s in range(200)}
    assert costs <= {1, 2, 3} and 1 in costs
    assert all(is_cograph(random_pair_edit(P4, seed=s).result_graph) for s in range(50))
    assert random_pair_edit(K2K2, seed=5).cost == 0


def test_random_pair_with_greedy_order_matches_greedy():
    inst = generate_perturbed_cograph(30, 40, seed=11)
    g = inst.graph
    t = modular_decomposition_tree(g)
    orders = []
    from cgedit import kernels
    from cgedit.editing.heuristic import _node_data

    for node in [n for n in t.root.postorder() if n.label is Label.PRIME]:
        q, sizes, minids = _node_data(g, node)
        orders.extend((i, j) for i, j, _ in kernels.greedy_merge(q, sizes, minids))
    script = iter(orders)
    rigged = random_pair_edit(g, pair_source=lambda live, rng: next(script))
    assert rigged.edits == heuristic_edit(g).edits


def test_random_pair_merges_flips_only_disagreeing_blocks():
    merges = random_pair_merges(P4.to_numpy(), [1] * 4, range(4), np.random.default_rng(0),
                                pair_source=lambda live, rng: (live[0], live[1]))
    assert merges[0] == (0, 1, [2])


# verify and dispatch

def test_verify_reports():
    g = Graph.path(5)
    report = verify_edit_result(g, exact_edit(g), deep_trace=True)
    assert report.ok and report["trace"].ok
    bad = EditResult(frozenset(), P4, 0, "greedy")
    report = verify_edit_result(P4, bad)
    assert not report.ok and "0 1 2 3" in report["cograph"].detail
    assert "FAIL cograph" in str(report)
    with pytest.raises(KeyError):
        report["nope"]


def test_verify_bruteforce_may_break_modules():
    from conftest import BREAKER6, BREAKER6_EDITS

    r = EditResult.build(BREAKER6, BREAKER6_EDITS, "bruteforce")
    report = verify_edit_result(BREAKER6, r)
    assert report.ok and not report["module_preserving"].ok
    assert not verify_edit_result(BREAKER6, EditResult.build(BREAKER6, BREAKER6_EDITS, "greedy")).ok


def test_edit_dispatch():
    for m in ("bruteforce", "exact", "greedy", "greedy-rand", "random-pair"):
        r = edit(P4, m, seed=2)
        assert r.method == m and is_cograph(r.result_graph)
    with pytest.raises(ValueError, match="unknown method"):
        edit(P4, "magic")


def test_empty_graph_inputs():
    g = Graph.empty(1)
    for m in ("bruteforce", "exact", "greedy", "greedy-rand", "random-pair"):
        assert edit(g, m).cost == 0
