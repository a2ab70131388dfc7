import itertools
import math
import warnings

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrlab import faults as ft
from arrlab.errors import BudgetExceeded, OutOfScope
from arrlab.graph import build, closed_neighborhood, complete_graph, cycle_graph, hypercube, \
    open_neighborhood, random_graph
from arrlab.faults import StructureClass as SC

from conftest import vid
from oracles import nx_graph


def nx_components(g, faults):
    h = nx_graph(g)
    h.remove_nodes_from(faults)
    return sorted((tuple(sorted(c)) for c in nx.connected_components(h)), key=lambda c: (-len(c), c[0]))


@settings(max_examples=60, deadline=None)
@given(st.sets(st.integers(0, 59), max_size=20))
def test_components_match_networkx(fs):
    g = build(5, 3)
    assert ft.components(g, fs).components == tuple(nx_components(g, fs))


def test_figure_one_two_four_cycles(a42):
    f = [vid(a42, s) for s in ("13", "24", "31", "42")]
    rep = ft.components(a42, f)
    assert [len(c) for c in rep.components] == [4, 4]
    h = nx_graph(a42)
    for c in rep.components:
        assert nx.is_isomorphic(h.subgraph(c), nx.cycle_graph(4))
    assert rep.classification is SC.OTHER
    assert rep.class_name.startswith("Other(")


def test_component_report_json(a42):
    rep = ft.components(a42, open_neighborhood(a42, [0]))
    js = rep.to_json(a42)
    assert js["class"] == "TwoComponentsSingleton"
    assert js["components"][1] == ["1 2"]
    assert len(js["faults"]) == 4


@pytest.mark.parametrize("sizes,cls", [
    ([10], SC.CONNECTED), ([9, 1], SC.TWO_COMPONENTS_SINGLETON), ([8, 2], SC.TWO_COMPONENTS_EDGE),
    ([1, 8, 1], SC.THREE_COMPONENTS_TWO_SINGLETONS), ([5, 3], SC.OTHER), ([4, 4, 1, 1], SC.OTHER),
    ([], SC.OTHER), ([3, 1, 2], SC.OTHER)])
def test_classify_sizes(sizes, cls):
    assert ft.classify_sizes(sizes)[0] is cls


def test_fault_mask_range(a42):
    with pytest.raises(IndexError):
        ft.fault_mask(a42, [12])


def test_is_separating(a42):
    assert ft.is_separating(a42, open_neighborhood(a42, [0]))
    assert not ft.is_separating(a42, [0, 1, 2])
    with pytest.raises(ValueError):
        ft.is_separating(a42, range(12))


@pytest.mark.parametrize("g", [build(4, 2), build(5, 3), build(4, 3), build(5, 4), complete_graph(6),
                               cycle_graph(7), hypercube(4)], ids=["A42", "A53", "A43", "A54", "K6", "C7", "Q4"])
def test_connectivity_matches_networkx(g):
    assert ft.connectivity(g) == nx.node_connectivity(nx_graph(g))


def test_connectivity_random_graphs():
    rng = np.random.default_rng(3)
    for _ in range(15):
        g = random_graph(int(rng.integers(6, 14)), 0.4, rng)
        h = nx_graph(g)
        want = nx.node_connectivity(h) if nx.is_connected(h) else 0
        assert ft.connectivity(g) == want


def test_connectivity_equals_degree():
    for n, k in [(4, 2), (5, 2), (4, 3), (5, 3)]:
        assert ft.connectivity(build(n, k)) == k * (n - k)


def test_local_connectivity_rejects_adjacent(a42):
    with pytest.raises(ValueError):
        ft.local_vertex_connectivity(a42, 0, a42.neighbors(0)[0])


def test_local_connectivity_vs_networkx(a53):
    h = nx_graph(a53)
    for t in (5, 17, 40, 59):
        if not a53.has_edge(0, t):
            assert ft.local_vertex_connectivity(a53, 0, t) == nx.node_connectivity(h, 0, t)


def test_fault_profile(a53):
    cls_of = {v: a53.class_of(v) for v in range(60)}
    f = [v for v in range(60) if cls_of[v] == 1][:5] + [v for v in range(60) if cls_of[v] == 2][:3]
    p = ft.fault_profile(a53, f)
    assert p.threshold == 4
    assert p.counts == (5, 3, 0, 0, 0)
    assert p.heavy == {1} and p.light == {2, 3, 4, 5}
    assert p.count(2) == 3


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(0, 359), max_size=29))
def test_heavy_class_bound_on_separating_sets(fs):
    g = build(6, 4)
    if not ft.is_separating(g, fs):
        return
    bound = ft.heavy_count_bound(6, 4, len(fs))
    assert len(ft.fault_profile(g, fs).heavy) <= bound


def test_heavy_count_bound_values():
    assert ft.heavy_count_bound(6, 4, 13) == 2
    assert ft.heavy_count_bound(6, 4, 14) == 3
    assert ft.heavy_count_bound(6, 4, 17) == 3
    assert ft.heavy_count_bound(6, 4, 18) is None


def test_light_side_connected_on_neighbourhoods(a64):
    for pattern in ("vertex", "edge", "twin"):
        assert ft.check_light_side_connected(a64, ft.witness_fault_set(a64, pattern).faults)


def test_light_side_warns_outside_hypothesis(a42):
    with pytest.warns(UserWarning):
        ft.check_light_side_connected(a42, [0])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ft.check_light_side_connected(build(5, 3), [0])


@pytest.mark.parametrize("n,k,r9,r12", [(6, 4, 13, 16), (5, 4, 6, 7), (7, 4, 20, 26), (5, 3, 9, 10)])
def test_regime_budgets(n, k, r9, r12):
    assert ft.regime_budget(n, k, "thm39") == r9
    assert ft.regime_budget(n, k, "thm312") == r12


def test_regime_scope():
    assert ft.in_theorem_scope(5, 3, "thm39")
    assert not ft.in_theorem_scope(5, 3, "thm312")
    assert ft.in_theorem_scope(6, 4, "thm312")
    with pytest.raises(ValueError):
        ft.regime_budget(6, 4, "thm99")


def test_classify_budget_and_scope(a64, a42):
    assert ft.classify(a64, open_neighborhood(a64, [0]), "thm39") is SC.TWO_COMPONENTS_SINGLETON
    with pytest.raises(BudgetExceeded):
        ft.classify(a64, range(14), "thm39")
    ft.classify(a64, range(16), "thm312")
    with pytest.raises(OutOfScope):
        ft.classify(a42, [0], "thm39")


def test_is_violation():
    assert not ft.is_violation(SC.CONNECTED, "thm39")
    assert ft.is_violation(SC.THREE_COMPONENTS_TWO_SINGLETONS, "thm39")
    assert not ft.is_violation(SC.THREE_COMPONENTS_TWO_SINGLETONS, "thm312")
    assert ft.is_violation(SC.OTHER, "thm312")


def brute_separating(g, size):
    h = nx_graph(g)
    out = []
    for c in itertools.combinations(range(g.num_vertices), size):
        sub = h.subgraph(set(h) - set(c))
        if not nx.is_connected(sub):
            out.append(frozenset(c))
    return out


@pytest.mark.parametrize("g,size", [(build(4, 2), 4), (build(4, 2), 5), (build(4, 3), 3), (cycle_graph(8), 2),
                                    (hypercube(3), 3)])
def test_enumeration_matches_brute_force(g, size):
    scan = ft.enumerate_separating_sets(g, size)
    assert scan.exhaustive and scan.total == math.comb(g.num_vertices, size)
    assert scan.sets == brute_separating(g, size)


def test_a42_separating_counts(a42):
    assert ft.enumerate_separating_sets(a42, 3).sets == []
    four = ft.enumerate_separating_sets(a42, 4).sets
    assert len(four) == 15
    assert frozenset(vid(a42, s) for s in ("13", "24", "31", "42")) in four


def test_a43_minimum_separators_are_neighbourhoods():
    g = build(4, 3)
    sets = ft.enumerate_separating_sets(g, 3).sets
    assert len(sets) == 24
    assert set(sets) == {open_neighborhood(g, [v]) for v in range(24)}


def test_enumeration_chunking_and_threads(a42, monkeypatch):
    whole = ft.enumerate_separating_sets(a42, 5).sets
    monkeypatch.setenv("ARRLAB_THREADS", "3")
    assert ft.enumerate_separating_sets(a42, 5, chunk=97).sets == whole
    monkeypatch.setenv("ARRLAB_THREADS", "1")
    assert ft.worker_count() == 1


def test_enumeration_budget(a42):
    scan = ft.enumerate_separating_sets(a42, 4, budget=100)
    assert not scan.exhaustive and scan.examined == 100
    assert scan.sets == [s for s in brute_separating(a42, 4) if sorted(s) < sorted(next(
        itertools.islice(itertools.combinations(range(12), 4), 100, None)))]


def test_python_fallback_matches_kernel(a42):
    for size in (3, 4, 5):
        assert ft._scan_python(a42, size, 0, math.comb(12, size)) == ft.enumerate_separating_sets(a42, size).sets


def test_python_fallback_large_graph():
    g = hypercube(7)
    scan = ft.enumerate_separating_sets(g, 1)
    assert scan.exhaustive and scan.sets == []


def test_enumeration_bad_size(a42):
    with pytest.raises(ValueError):
        ft.enumerate_separating_sets(a42, 0)


def test_vertex_and_edge_witnesses(a64):
    w = ft.witness_fault_set(a64, "vertex")
    assert len(w.faults) == 8
    assert ft.components(a64, w.faults).classification is SC.TWO_COMPONENTS_SINGLETON
    e = ft.witness_fault_set(a64, "edge")
    assert len(e.faults) == 13
    assert ft.components(a64, e.faults).classification is SC.TWO_COMPONENTS_EDGE


def test_twin_witness(a64):
    w = ft.witness_fault_set(a64, "twin")
    x, y = w.core
    assert not a64.has_edge(x, y)
    assert len(a64.neighbor_set(x) & a64.neighbor_set(y)) == 2
    assert len(w.faults) == 14
    assert ft.components(a64, w.faults).classification is SC.THREE_COMPONENTS_TWO_SINGLETONS


def test_path_witness(a64):
    w = ft.witness_fault_set(a64, "path")
    x, y, z = w.core
    assert a64.class_of(x) == a64.class_of(y) != a64.class_of(z)
    assert a64.arrangement(z)[-1] not in a64.arrangement(x)
    rep = ft.components(a64, w.faults)
    assert len(w.faults) <= ft.regime_budget(6, 4, "thm312") + 2
    assert any(set(w.core) <= set(c) for c in rep.components)
    assert closed_neighborhood(a64, w.core) - w.faults == set(w.core)


def test_witness_core_validation(a64):
    with pytest.raises(ValueError):
        ft.witness_fault_set(a64, "edge", (0, 359))
    with pytest.raises(ValueError):
        ft.witness_fault_set(a64, "twin", (0, a64.neighbors(0)[0]))
    with pytest.raises(ValueError):
        ft.witness_fault_set(a64, "vertex", (0, 1))
    with pytest.raises(ValueError):
        ft.witness_fault_set(a64, "star")
    with pytest.raises(ValueError):
        ft.witness_fault_set(cycle_graph(5), "path")


def test_random_fault_sets_deterministic(a64):
    for strategy in ft.STRATEGIES:
        a = list(ft.iter_random_fault_sets(a64, 16, 50, seed=9, strategy=strategy))
        b = list(ft.iter_random_fault_sets(a64, 16, 50, seed=9, strategy=strategy))
        assert a == b
        assert all(len(f) <= 16 for f in a)


def test_random_fault_sets_size_spread(a64):
    sizes = {len(f) for f in ft.iter_random_fault_sets(a64, 13, 400, seed=1)}
    assert sizes == set(range(14))


def test_neighbourhood_strategy_separates_often(a64):
    sets = list(ft.iter_random_fault_sets(a64, 16, 300, seed=2, strategy="neighborhood"))
    hits = sum(ft.is_separating(a64, f) for f in sets)
    assert hits > 30


def test_unknown_strategy(a64):
    with pytest.raises(ValueError):
        ft.random_fault_set(a64, 3, np.random.default_rng(0), "clever")
