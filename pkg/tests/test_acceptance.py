"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected and repeated in the terminal summary.
"""

import itertools
import math
import time
from contextlib import contextmanager

from arrlab import diagnosis as dg
from arrlab import faults as ft
from arrlab import graph as gr
from arrlab import verify
from arrlab.faults import StructureClass as SC

from conftest import ACCEPTANCE_LINES

STRUCTURE_PARAMS = [(4, 2), (5, 2), (4, 3), (5, 3), (6, 3), (5, 4), (6, 4)]
TRIALS = 10**5


@contextmanager
def criterion(number, title, limit):
    """Time the body, print one result line, then enforce the time limit."""
    notes = []
    start = time.perf_counter()
    passed = False
    try:
        yield notes
        passed = True
    finally:
        elapsed = time.perf_counter() - start
        in_time = elapsed < limit
        verdict = "PASS" if passed and in_time else "FAIL"
        extra = f" [{'; '.join(notes)}]" if notes else ""
        over = "" if in_time else " over time limit"
        line = f"criterion {number:2d} {verdict}: {title} ({elapsed:.1f}s, limit {limit}s{over}){extra}"
        print(line)
        ACCEPTANCE_LINES.append(line)
    assert in_time, line


def test_criterion_01_structure():
    with criterion(1, "vertex, degree, edge and cross-edge counts", 5) as notes:
        for n, k in STRUCTURE_PARAMS:
            g = gr.build(n, k)
            deg = k * (n - k)
            assert g.num_vertices == math.factorial(n) // math.factorial(n - k)
            assert all(g.degree(v) == deg for v in range(g.num_vertices))
            assert g.num_edges == g.num_vertices * deg // 2
            want = math.factorial(n - 2) // math.factorial(n - k - 1)
            for i, j in itertools.permutations(range(1, n + 1), 2):
                es = gr.cross_edges(g, i, j)
                assert len(es) == want
                assert len({u for u, _ in es}) == len({v for _, v in es}) == want
        notes.append(f"{len(STRUCTURE_PARAMS)} graphs")


def test_criterion_02_common_neighbor_table():
    with criterion(2, "common-neighbour table over all vertex pairs", 30) as notes:
        mismatched = {}
        for n, k in [(4, 2), (5, 3), (5, 4), (6, 4)]:
            g = gr.build(n, k)
            bad = 0
            for u in range(g.num_vertices):
                dist = gr.bfs_distances(g, u)
                for v in range(u + 1, g.num_vertices):
                    if gr.common_neighbors(g, u, v) != gr.common_neighbor_formula(n, k, int(dist[v])):
                        bad += 1
            if bad:
                mismatched[f"A({n},{k})"] = bad
        if mismatched:
            notes.append("distance-2 pairs with one common neighbour: "
                         + ", ".join(f"{key}: {c}" for key, c in mismatched.items()))
        assert not mismatched, mismatched


def test_criterion_03_diameter():
    with criterion(3, "diameter equals floor(3k/2)", 30):
        for n, k in STRUCTURE_PARAMS:
            assert gr.diameter(gr.build(n, k)) == (3 * k) // 2, (n, k)


def test_criterion_04_connectivity():
    with criterion(4, "vertex connectivity", 60):
        for n, k in [(4, 2), (5, 2), (4, 3), (5, 3)]:
            assert ft.connectivity(gr.build(n, k)) == k * (n - k)
        for m in (5, 6):
            assert ft.connectivity(gr.complete_graph(m)) == m - 1


def test_criterion_05_small_counterexample():
    with criterion(5, "A(4,2) separating set leaving two 4-cycles", 1) as notes:
        g = gr.build(4, 2)
        scan = ft.enumerate_separating_sets(g, 4)
        assert scan.examined == 495
        hoods = {g.neighbor_set(x) for x in range(g.num_vertices)}
        hits = []
        for f in scan.sets:
            if f in hoods:
                continue
            comps = ft.components(g, f).components
            if [len(c) for c in comps] == [4, 4] and all(
                    len(g.neighbor_set(v) & set(c)) == 2 for c in comps for v in c):
                hits.append(f)
        assert hits
        notes.append(f"{len(hits)} such sets")


def test_criterion_06_tightly_super_exhaustive():
    with criterion(6, "exhaustive minimum separating sets at (4,3) and (5,3)", 600) as notes:
        for n, k, total in [(4, 3, 2024), (5, 3, math.comb(60, 6))]:
            g = gr.build(n, k)
            t0 = time.perf_counter()
            scan = ft.enumerate_separating_sets(g, k * (n - k))
            assert scan.exhaustive and scan.examined == total
            hoods = {g.neighbor_set(x): x for x in range(g.num_vertices)}
            for f in scan.sets:
                assert f in hoods
                rep = ft.components(g, f)
                assert rep.classification is SC.TWO_COMPONENTS_SINGLETON
                assert rep.components[-1] == (hoods[f],)
            assert len(scan.sets) == g.num_vertices
            took = time.perf_counter() - t0
            if (n, k) == (4, 3):
                assert took < 1
            notes.append(f"A({n},{k}): {total} subsets in {took:.1f}s")


def test_criterion_07_two_component_structure():
    with criterion(7, "sampled structure at (5,3), |F| <= 9", 60) as notes:
        rep = verify.run_claim("thm-3.9", gr.build(5, 3), seed=7, trials=TRIALS)
        assert rep.details["max_fault"] == 9
        assert rep.details["witnesses"]["vertex"] == SC.TWO_COMPONENTS_SINGLETON.value
        assert rep.details["witnesses"]["edge"] == SC.TWO_COMPONENTS_EDGE.value
        notes.append(f"{rep.candidates} sets, {len(rep.violations)} violations")
        assert rep.ok, rep.violations[:3]


def test_criterion_08_three_component_structure():
    with criterion(8, "sampled structure at (6,4), |F| <= 16", 300) as notes:
        rep = verify.run_claim("thm-3.12", gr.build(6, 4), seed=8, trials=TRIALS)
        assert rep.details["max_fault"] == 16
        assert rep.details["witnesses"]["vertex"] == SC.TWO_COMPONENTS_SINGLETON.value
        assert rep.details["witnesses"]["edge"] == SC.TWO_COMPONENTS_EDGE.value
        assert rep.details["witnesses"]["twin"] == SC.THREE_COMPONENTS_TWO_SINGLETONS.value
        notes.append(f"{rep.candidates} sets, {len(rep.violations)} violations")
        assert rep.ok, rep.violations[:3]


def test_criterion_09_witness_pairs():
    with criterion(9, "indistinguishable conditional pairs one past the bound", 10):
        for n, k, size in [(6, 4, 18), (5, 4, 9)]:
            g = gr.build(n, k)
            w = dg.tc_witness_pair(g)
            assert len(w.f1) == len(w.f2) == size
            assert dg.is_conditional(g, w.f1) and dg.is_conditional(g, w.f2)
            assert not dg.distinguishable_sd(g, w.f1, w.f2).distinguishable
            assert not dg.distinguishable_forced(g, w.f1, w.f2).distinguishable


def test_criterion_10_checker_equivalence():
    with criterion(10, "condition scan agrees with forced-value oracle", 30) as notes:
        rep = verify.check_checker_equivalence(seed=10, trials=200, pairs=50)
        assert rep.candidates == 10**4
        notes.append(f"{rep.details['distinguishable']} distinguishable, "
                     f"{rep.details['indistinguishable']} not")
        assert rep.ok, rep.violations[:1]


def test_criterion_11_sampled_lower_bound():
    with criterion(11, "sampled conditional pairs at t = 17 and t = 8", 600) as notes:
        for n, k, t in [(6, 4, 17), (5, 4, 8)]:
            g = gr.build(n, k)
            rep = verify.run_claim("thm-4.6-sampled", g, seed=11, trials=TRIALS)
            assert rep.details["t"] == t and rep.details["tight"]
            checked = sum(rep.details["checked"].values())
            assert checked >= TRIALS
            notes.append(f"A({n},{k}): {checked} pairs, {len(rep.violations)} violations")
            assert rep.ok, rep.violations[:3]


def test_criterion_12_exact_tc():
    graphs = {"C6": gr.cycle_graph(6), "K5": gr.complete_graph(5), "Q3": gr.hypercube(3)}
    with criterion(12, "exact t_c with certificates on C6, K5, Q3", 60) as notes:
        for name, g in graphs.items():
            res = dg.tc_exhaustive(g)
            assert res.disagreements == []
            a, b = res.certificate
            assert a != b and max(len(a), len(b)) == res.value + 1
            assert dg.is_conditional(g, a) and dg.is_conditional(g, b)
            assert not dg.distinguishable_sd(g, a, b).distinguishable
            assert not dg.distinguishable_forced(g, a, b).distinguishable
            # re-check every pair up to t_c outside the level-by-level search
            conds = [frozenset(c) for s in range(res.value + 1)
                     for c in itertools.combinations(range(g.num_vertices), s) if dg.is_conditional(g, c)]
            assert all(dg.distinguishable_sd(g, x, y).distinguishable
                       for x, y in itertools.combinations(conds, 2))
            notes.append(f"{name}: t_c = {res.value}")
