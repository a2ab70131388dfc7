"""Named verification campaigns producing replayable reports.

Each runner checks one structural claim about A(n, k) by exhaustive search,
seeded sampling, or an explicit witness, and returns a
:class:`VerificationReport` whose violations carry the offending vertex sets
as labels.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import diagnosis as dg
from . import faults as ft
from . import graph as gr
from .errors import OutOfScope

DEFAULT_SCAN_BUDGET = 5_000_000


@dataclass
class VerificationReport:
    claim: str
    parameters: dict
    mode: str
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    candidates: int | None = None
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, include_elapsed: bool = False) -> dict:
        out = {
            "claim": self.claim,
            "parameters": self.parameters,
            "mode": self.mode,
            "verified": self.ok,
            "violations": self.violations,
            "details": self.details,
        }
        if self.candidates is not None:
            out["candidates"] = self.candidates
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def _labels(g: gr.Graph, vs) -> list[str]:
    return [g.label(v) for v in sorted(vs)]


def _need_k(g: gr.ArrangementGraph, k_min: int, claim: str) -> None:
    if g.k < k_min:
        raise OutOfScope(f"{claim} needs k >= {k_min}, got k={g.k}")


def _seeds(seed: int, count: int) -> list[int]:
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(count)]


# ---------------------------------------------------------------------------
# structure of A(n, k)


def check_cross_edges(g: gr.ArrangementGraph, **_) -> VerificationReport:
    want = gr.cross_edge_count(g.n, g.k)
    bad = []
    for i in range(1, g.n + 1):
        for j in range(1, g.n + 1):
            if i == j:
                continue
            es = gr.cross_edges(g, i, j)
            ends_i = {u for u, _ in es}
            ends_j = {v for _, v in es}
            if len(es) != want or len(ends_i) != len(es) or len(ends_j) != len(es):
                bad.append({"i": i, "j": j, "count": len(es)})
    return VerificationReport("eq-2.1", {}, "exhaustive", bad, {"expected": want})


def check_outer_inner(g: gr.ArrangementGraph, **_) -> VerificationReport:
    inner_want, outer_want = (g.k - 1) * (g.n - g.k), g.n - g.k
    bad = []
    seen: dict[tuple[int, int], int] = {}
    for v in range(g.num_vertices):
        inner, outer = gr.inner_neighbors(g, v), gr.outer_neighbors(g, v)
        classes = {g.class_of(u) for u in outer}
        if len(inner) != inner_want or len(outer) != outer_want or len(classes) != len(outer):
            bad.append({"vertex": g.label(v), "inner": len(inner), "outer": len(outer)})
        for u in outer:
            owner = seen.setdefault((u, g.class_of(v)), v)
            if owner != v:
                bad.append({"vertex": g.label(v), "shares_outer_with": g.label(owner)})
    return VerificationReport("eq-2.2", {}, "exhaustive", bad,
                              {"inner": inner_want, "outer": outer_want})


def check_edge_neighborhood(g: gr.ArrangementGraph, **_) -> VerificationReport:
    want = (2 * g.k - 1) * (g.n - g.k) - 1
    bad = [{"edge": [g.label(u), g.label(v)], "size": len(gr.edge_neighborhood(g, (u, v)))}
           for u, v in g.edges() if len(gr.edge_neighborhood(g, (u, v))) != want]
    return VerificationReport("eq-2.4", {}, "exhaustive", bad, {"expected": want})


def check_common_neighbors(g: gr.Graph, **_) -> VerificationReport:
    bad = []
    tally: Counter = Counter()
    for u in range(g.num_vertices):
        dist = gr.bfs_distances(g, u)
        for v in range(u + 1, g.num_vertices):
            d = int(dist[v])
            got = gr.common_neighbors(g, u, v)
            want = gr.common_neighbor_formula(g.n, g.k, d)
            tally[min(d, 3)] += 1
            if got != want:
                bad.append({"u": g.label(u), "v": g.label(v), "distance": d, "common": got,
                            "expected": want})
    return VerificationReport("eq-2.5", {}, "exhaustive", bad,
                              {"pairs_by_distance": {str(d): c for d, c in sorted(tally.items())}},
                              candidates=math.comb(g.num_vertices, 2))


def check_diameter(g: gr.ArrangementGraph, **_) -> VerificationReport:
    got, want = gr.diameter(g), gr.diameter_formula(g.k)
    bad = [] if got == want else [{"formula_discrepancy": {"computed": got, "formula": want}}]
    return VerificationReport("diameter", {}, "exhaustive", bad, {"diameter": got, "formula": want})


def check_kappa(g: gr.ArrangementGraph, **_) -> VerificationReport:
    got, want = ft.connectivity(g), g.k * (g.n - g.k)
    bad = [] if got == want else [{"kappa": got, "expected": want}]
    return VerificationReport("kappa", {}, "exhaustive", bad, {"kappa": got, "expected": want})


# ---------------------------------------------------------------------------
# fault resilience


def check_tightly_super(g: gr.ArrangementGraph, seed: int = 0, trials: int = 10_000,
                        long: bool = False, budget: int = DEFAULT_SCAN_BUDGET, **_) -> VerificationReport:
    """Every separating set of size k(n-k) is some N(x) and isolates exactly x."""
    _need_k(g, 3, "thm-3.1")
    kappa = g.k * (g.n - g.k)
    total = math.comb(g.num_vertices, kappa)
    neighborhoods = {g.neighbor_set(x): x for x in range(g.num_vertices)}
    bad = []

    def judge(f: frozenset[int]) -> None:
        rep = ft.components(g, f)
        x = neighborhoods.get(f)
        if (rep.classification is not ft.StructureClass.TWO_COMPONENTS_SINGLETON or x is None
                or rep.components[-1] != (x,)):
            bad.append({"faults": _labels(g, f), "class": rep.class_name})

    if total <= budget or long:
        scan = ft.enumerate_separating_sets(g, kappa)
        for f in scan.sets:
            judge(f)
        found = len(scan.sets)
        return VerificationReport("thm-3.1", {}, "exhaustive", bad,
                                  {"separating_sets": found, "vertices": g.num_vertices},
                                  candidates=scan.examined)
    rng = np.random.default_rng(seed)
    separating = 0
    for _ in range(trials):
        f = frozenset(rng.choice(g.num_vertices, size=kappa, replace=False).tolist())
        if ft.is_separating(g, f):
            separating += 1
            judge(f)
    for f in neighborhoods:
        judge(f)
    return VerificationReport("thm-3.1", {}, "sampled", bad,
                              {"random_separating": separating, "witnesses": len(neighborhoods)},
                              candidates=trials + len(neighborhoods))


def _sampled_sets(g, max_faults, trials, seed):
    s_uniform, s_near = _seeds(seed, 2)
    for strategy, s in (("uniform", s_uniform), ("neighborhood", s_near)):
        yield from ft.iter_random_fault_sets(g, max_faults, trials, s, strategy)


def check_heavy_classes(g: gr.ArrangementGraph, seed: int = 0, trials: int = 10_000,
                        max_fault: int | None = None, **_) -> VerificationReport:
    """Separating sets within budget have between 1 and 2 (resp. 3) heavy classes."""
    _need_k(g, 3, "cor-3.5")
    top = ft.light_side_budget(g.n, g.k)
    max_fault = top if max_fault is None else min(max_fault, top)
    bad = []
    tally: Counter = Counter()
    for f in _sampled_sets(g, max_fault, trials, seed):
        mask = ft.fault_mask(g, f)
        if len(ft.survivor_sizes(g, mask)) < 2:
            continue
        heavy = len(ft.fault_profile(g, f).heavy)
        tally[heavy] += 1
        if not 1 <= heavy <= ft.heavy_count_bound(g.n, g.k, len(f)):
            bad.append({"faults": _labels(g, f), "heavy": heavy})
    return VerificationReport("cor-3.5", {"max_fault": max_fault}, "sampled", bad,
                              {"heavy_count_histogram": {str(h): c for h, c in sorted(tally.items())}},
                              candidates=2 * trials)


def check_light_side(g: gr.ArrangementGraph, seed: int = 0, trials: int = 10_000,
                     max_fault: int | None = None, **_) -> VerificationReport:
    _need_k(g, 3, "lemma-3.4")
    top = ft.light_side_budget(g.n, g.k)
    max_fault = top if max_fault is None else min(max_fault, top)
    bad = [{"faults": _labels(g, f)} for f in _sampled_sets(g, max_fault, trials, seed)
           if not ft.check_light_side_connected(g, f)]
    witness = ft.witness_fault_set(g, "path").faults if g.k >= 2 else frozenset()
    if len(witness) <= top and not ft.check_light_side_connected(g, witness):
        bad.append({"faults": _labels(g, witness)})
    return VerificationReport("lemma-3.4", {"max_fault": max_fault}, "sampled", bad,
                              candidates=2 * trials + 1)


def check_structure(g: gr.ArrangementGraph, regime: str, seed: int = 0, trials: int = 10_000,
                    max_fault: int | None = None, **_) -> VerificationReport:
    """Sampled and witness fault sets within budget only produce the allowed shapes."""
    claim = {"thm39": "thm-3.9", "thm312": "thm-3.12"}[regime]
    _need_k(g, 3 if regime == "thm39" else 4, claim)
    budget = ft.regime_budget(g.n, g.k, regime)
    max_fault = budget if max_fault is None else min(max_fault, budget)
    bad = []
    tally: Counter = Counter()

    def judge(f: frozenset[int], tag: str) -> ft.StructureClass:
        cls, desc = ft.classify_sizes(ft.survivor_sizes(g, ft.fault_mask(g, f)))
        tally[cls.value] += 1
        if ft.is_violation(cls, regime):
            bad.append({"faults": _labels(g, f), "class": f"Other({desc})", "source": tag})
        return cls

    for f in _sampled_sets(g, max_fault, trials, seed):
        judge(f, "sampled")
    witnesses = {}
    for pattern in ("vertex", "edge", "twin"):
        w = ft.witness_fault_set(g, pattern)
        if len(w.faults) <= max_fault:
            witnesses[pattern] = judge(w.faults, pattern).value
        else:
            witnesses[pattern] = f"skipped (|F|={len(w.faults)} > {max_fault})"
    details = {"classes": dict(sorted(tally.items())), "witnesses": witnesses,
               "max_fault": max_fault}
    if regime == "thm312":
        twin = witnesses["twin"]
        if not twin.startswith("skipped") and twin != ft.StructureClass.THREE_COMPONENTS_TWO_SINGLETONS.value:
            bad.append({"witness": "twin", "class": twin})
        # one past the budget, N(x,y,z) cuts off the path x-y-z as a third shape
        fig = ft.witness_fault_set(g, "path")
        rep = ft.components(g, fig.faults)
        home = [c for c in rep.components if fig.core[0] in c]
        together = bool(home) and set(fig.core) <= set(home[0])
        details["path_witness"] = {"faults": len(fig.faults), "class": rep.class_name,
                                   "core_component_size": len(home[0]) if home else 0,
                                   "core_in_one_component": together}
        if not together:
            bad.append({"witness": "path", "faults": _labels(g, fig.faults), "class": rep.class_name})
    return VerificationReport(claim, {"max_fault": max_fault}, "sampled", bad, details,
                              candidates=2 * trials + len(witnesses))


# ---------------------------------------------------------------------------
# diagnosis


def check_witness_pair(g: gr.ArrangementGraph, **_) -> VerificationReport:
    _need_k(g, 4, "thm-4.2")
    pair = dg.tc_witness_pair(g)
    want = (3 * g.k - 2) * (g.n - g.k) - 2 if g.n >= g.k + 2 else 3 * g.n - 6
    sd = dg.distinguishable_sd(g, pair.f1, pair.f2)
    fv = dg.distinguishable_forced(g, pair.f1, pair.f2)
    details = {
        "size_f1": len(pair.f1), "size_f2": len(pair.f2), "expected_size": want,
        "f1_minus_f2": len(pair.f1 - pair.f2), "f2_minus_f1": len(pair.f2 - pair.f1),
        "conditional": [dg.is_conditional(g, pair.f1), dg.is_conditional(g, pair.f2)],
        "distinguishable_sd": sd.distinguishable, "distinguishable_forced": fv.distinguishable,
        "path": _labels(g, pair.path),
    }
    ok = (len(pair.f1) == len(pair.f2) == want and details["f1_minus_f2"] == 1
          and details["f2_minus_f1"] == 1 and all(details["conditional"])
          and not sd.distinguishable and not fv.distinguishable)
    bad = [] if ok else [{"f1": _labels(g, pair.f1), "f2": _labels(g, pair.f2)}]
    return VerificationReport("thm-4.2", {}, "witness", bad, details)


def check_checker_equivalence(g: gr.Graph | None = None, seed: int = 0, trials: int = 200,
                              pairs: int = 50, **_) -> VerificationReport:
    """Both distinguishability checkers agree on random pairs over random graphs."""
    rng = np.random.default_rng(seed)
    bad = []
    verdicts: Counter = Counter()
    for gi in range(trials):
        nv = int(rng.integers(8, 15))
        h = gr.random_graph(nv, float(rng.uniform(0.25, 0.6)), rng, min_degree=2)
        for _ in range(pairs):
            while True:
                p = float(rng.uniform(0.1, 0.6))
                a = frozenset(np.flatnonzero(rng.random(nv) < p).tolist())
                b = frozenset(np.flatnonzero(rng.random(nv) < p).tolist())
                if a != b:
                    break
            sd = dg.distinguishable_sd(h, a, b).distinguishable
            fv = dg.distinguishable_forced(h, a, b).distinguishable
            verdicts[sd] += 1
            if sd != fv:
                bad.append({"graph": gi, "edges": [list(e) for e in h.edges()],
                            "f1": sorted(a), "f2": sorted(b)})
    return VerificationReport("lemma-4.1-equiv", {"graphs": trials, "pairs": pairs}, "sampled", bad,
                              {"distinguishable": verdicts[True], "indistinguishable": verdicts[False]},
                              candidates=trials * pairs)


def check_tc_lower_bound(g: gr.ArrangementGraph, seed: int = 0, trials: int = 10_000,
                         **_) -> VerificationReport:
    """Sampled conditional pairs at the closed-form t_c are distinguishable; t_c + 1 is tight."""
    _need_k(g, 4, "thm-4.6-sampled")
    t = dg.conditional_diagnosability_bound(g)
    lemma43 = []

    def watch(a, b):
        if not dg.largest_component_contains_difference(g, a, b):
            lemma43.append({"f1": _labels(g, a), "f2": _labels(g, b)})

    s_uniform, s_near = _seeds(seed, 2)
    reports = [dg.sample_lower_bound(g, t, trials, s, strategy, on_pair=watch)
               for strategy, s in (("uniform", s_uniform), ("neighborhood", s_near))]
    bad = [{"f1": _labels(g, a), "f2": _labels(g, b), "strategy": r.strategy}
           for r in reports for a, b in r.violations]
    bad.extend({"lemma-4.3": v} for v in lemma43)
    pair = dg.tc_witness_pair(g)
    tight = (max(len(pair.f1), len(pair.f2)) == t + 1
             and not dg.distinguishable_forced(g, pair.f1, pair.f2).distinguishable)
    if not tight:
        bad.append({"tightness": "witness pair at t+1 is not indistinguishable"})
    details = {"t": t, "tight": tight,
               "checked": {r.strategy: r.checked for r in reports},
               "sampling_failures": {r.strategy: r.sampling_failures for r in reports}}
    return VerificationReport("thm-4.6-sampled", {"t": t}, "sampled", bad, details,
                              candidates=sum(r.checked for r in reports))


CLAIMS = {
    "eq-2.1": check_cross_edges,
    "eq-2.2": check_outer_inner,
    "eq-2.4": check_edge_neighborhood,
    "eq-2.5": check_common_neighbors,
    "diameter": check_diameter,
    "kappa": check_kappa,
    "thm-3.1": check_tightly_super,
    "cor-3.5": check_heavy_classes,
    "lemma-3.4": check_light_side,
    "thm-3.9": lambda g, **kw: check_structure(g, "thm39", **kw),
    "thm-3.12": lambda g, **kw: check_structure(g, "thm312", **kw),
    "thm-4.2": check_witness_pair,
    "lemma-4.1-equiv": check_checker_equivalence,
    "thm-4.6-sampled": check_tc_lower_bound,
}


def run_claim(claim: str, g: gr.ArrangementGraph | None, **options) -> VerificationReport:
    """Run a named claim and stamp the report with parameters and wall time."""
    if claim not in CLAIMS:
        raise KeyError(f"unknown claim {claim!r}")
    start = time.perf_counter()
    report = CLAIMS[claim](g, **options)
    report.elapsed = time.perf_counter() - start
    params = {"n": g.n, "k": g.k} if isinstance(g, gr.ArrangementGraph) else {}
    params.update({k: v for k, v in options.items() if v is not None})
    params.update(report.parameters)
    report.parameters = params
    return report
