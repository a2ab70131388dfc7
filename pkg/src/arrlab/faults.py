"""Vertex faults: survivor components, connectivity, and structure checks.

A fault set is any iterable of vertex ids; functions normalise it to a
``frozenset``.  All structural verdicts are recomputed from the survivor
graph, never inferred from the fault-set shape.
"""

from __future__ import annotations

import math
import os
import warnings
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, OutOfScope
from .graph import ArrangementGraph, Graph, class_labels, inner_neighbors, open_neighborhood, \
    outer_neighbors

REGIMES = ("thm39", "thm312")


class StructureClass(str, Enum):
    CONNECTED = "Connected"
    TWO_COMPONENTS_SINGLETON = "TwoComponentsSingleton"
    TWO_COMPONENTS_EDGE = "TwoComponentsEdge"
    THREE_COMPONENTS_TWO_SINGLETONS = "ThreeComponentsTwoSingletons"
    OTHER = "Other"


ALLOWED = {
    "thm39": frozenset({StructureClass.TWO_COMPONENTS_SINGLETON, StructureClass.TWO_COMPONENTS_EDGE}),
    "thm312": frozenset({StructureClass.TWO_COMPONENTS_SINGLETON, StructureClass.TWO_COMPONENTS_EDGE,
                         StructureClass.THREE_COMPONENTS_TWO_SINGLETONS}),
}


def fault_mask(g: Graph, faults: Iterable[int]) -> np.ndarray:
    """Boolean membership array of ``faults``; raises on out-of-range ids."""
    mask = np.zeros(g.num_vertices, dtype=bool)
    for v in faults:
        if not 0 <= v < g.num_vertices:
            raise IndexError(f"fault vertex {v} out of range 0..{g.num_vertices - 1}")
        mask[v] = True
    return mask


def classify_sizes(sizes: list[int]) -> tuple[StructureClass, str]:
    """Structure class of a survivor graph from its component sizes.

    A two-vertex component is connected, so it is necessarily a single edge.
    """
    sizes = sorted(sizes, reverse=True)
    c = len(sizes)
    if c == 1:
        return StructureClass.CONNECTED, ""
    if c == 2 and sizes[1] == 1:
        return StructureClass.TWO_COMPONENTS_SINGLETON, ""
    if c == 2 and sizes[1] == 2:
        return StructureClass.TWO_COMPONENTS_EDGE, ""
    if c == 3 and sizes[1] == sizes[2] == 1:
        return StructureClass.THREE_COMPONENTS_TWO_SINGLETONS, ""
    if c == 0:
        return StructureClass.OTHER, "no surviving vertices"
    return StructureClass.OTHER, f"{c} components of sizes {sizes}"


@dataclass(frozen=True)
class ComponentReport:
    """Components of G - F, largest first (ties: smallest vertex first)."""

    faults: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    classification: StructureClass
    description: str = ""

    @property
    def largest_size(self) -> int:
        return len(self.components[0]) if self.components else 0

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    @property
    def class_name(self) -> str:
        if self.classification is StructureClass.OTHER:
            return f"Other({self.description})"
        return self.classification.value

    def to_json(self, g: Graph) -> dict:
        return {
            "faults": [g.label(v) for v in self.faults],
            "components": [[g.label(v) for v in comp] for comp in self.components],
            "class": self.class_name,
        }


def survivor_labels(g: Graph, mask: np.ndarray) -> np.ndarray:
    indptr, indices = g.csr
    return _kernels.component_labels(indptr, indices, ~mask)


def survivor_sizes(g: Graph, mask: np.ndarray) -> list[int]:
    labels = survivor_labels(g, mask)
    live = labels[labels >= 0]
    return np.bincount(live).tolist() if live.size else []


def components(g: Graph, faults: Iterable[int]) -> ComponentReport:
    """Exact connected components of the graph with ``faults`` deleted."""
    mask = fault_mask(g, faults)
    labels = survivor_labels(g, mask)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(labels.tolist()):
        if c >= 0:
            groups.setdefault(c, []).append(v)
    comps = sorted((tuple(vs) for vs in groups.values()), key=lambda c: (-len(c), c[0]))
    cls, desc = classify_sizes([len(c) for c in comps])
    return ComponentReport(tuple(np.flatnonzero(mask).tolist()), tuple(comps), cls, desc)


def is_separating(g: Graph, faults: Iterable[int]) -> bool:
    """True iff deleting ``faults`` leaves at least two components."""
    mask = fault_mask(g, faults)
    if mask.all():
        raise ValueError("fault set covers every vertex")
    return len(survivor_sizes(g, mask)) >= 2


# ---------------------------------------------------------------------------
# connectivity


def local_vertex_connectivity(g: Graph, s: int, t: int, cutoff: int | None = None) -> int:
    """Maximum number of internally disjoint s-t paths (s, t nonadjacent).

    Unit-capacity augmenting paths on the vertex-split digraph: every vertex
    other than s and t becomes an in/out pair joined by a capacity-1 arc.
    """
    if s == t or g.has_edge(s, t):
        raise ValueError("local connectivity needs distinct nonadjacent vertices")
    nv = g.num_vertices
    # node 2v = v_in, 2v+1 = v_out; arcs stored as parallel lists with reverse index
    head: list[int] = []
    cap: list[int] = []
    out: list[list[int]] = [[] for _ in range(2 * nv)]
    big = nv

    def arc(a: int, b: int, c: int) -> None:
        out[a].append(len(head))
        head.append(b)
        cap.append(c)
        out[b].append(len(head))
        head.append(a)
        cap.append(0)

    for v in range(nv):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges():
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)

    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while cutoff is None or flow < cutoff:
        parent = [-1] * (2 * nv)
        parent[source] = -2
        queue = deque([source])
        while queue and parent[sink] == -1:
            a = queue.popleft()
            for e in out[a]:
                b = head[e]
                if cap[e] > 0 and parent[b] == -1:
                    parent[b] = e
                    queue.append(b)
        if parent[sink] == -1:
            break
        b = sink
        while b != source:
            e = parent[b]
            cap[e] -= 1
            cap[e ^ 1] += 1
            b = head[e ^ 1]
        flow += 1
    return flow


def connectivity(g: Graph) -> int:
    """Vertex connectivity; n-1 for a complete graph on n vertices."""
    nv = g.num_vertices
    if all(len(nb) == nv - 1 for nb in g.adjacency):
        return nv - 1
    best = g.min_degree
    i = 0
    while i <= best and i < nv:
        for j in range(i + 1, nv):
            if not g.has_edge(i, j):
                best = min(best, local_vertex_connectivity(g, i, j, cutoff=best))
        i += 1
    return best


# ---------------------------------------------------------------------------
# fault distribution over the last-position decomposition


@dataclass(frozen=True)
class FaultProfile:
    """Faults per last-position class; ``counts[i-1]`` is the count for symbol i."""

    counts: tuple[int, ...]
    heavy: frozenset[int]
    light: frozenset[int]
    threshold: int

    def count(self, symbol: int) -> int:
        return self.counts[symbol - 1]


def fault_profile(g: ArrangementGraph, faults: Iterable[int]) -> FaultProfile:
    mask = fault_mask(g, faults)
    cls = class_labels(g)
    counts = np.bincount(cls[mask], minlength=g.n + 1)[1:]
    threshold = (g.k - 1) * (g.n - g.k)
    heavy = frozenset(int(s) for s in np.flatnonzero(counts >= threshold) + 1)
    light = frozenset(range(1, g.n + 1)) - heavy
    return FaultProfile(tuple(int(c) for c in counts), heavy, light, threshold)


def light_side_budget(n: int, k: int) -> int:
    return (3 * k - 2) * (n - k) - 3


def check_light_side_connected(g: ArrangementGraph, faults: Iterable[int]) -> bool:
    """Whether the union of light classes, minus its faults, is connected."""
    faults = frozenset(faults)
    if g.k < 3 or len(faults) > light_side_budget(g.n, g.k):
        warnings.warn(f"light-side check outside its hypothesis (k={g.k}, |F|={len(faults)})",
                      stacklevel=2)
    prof = fault_profile(g, faults)
    if not prof.light:
        return True
    cls = class_labels(g)
    dead = fault_mask(g, faults) | ~np.isin(cls, sorted(prof.light))
    return len(survivor_sizes(g, dead)) <= 1


def heavy_count_bound(n: int, k: int, size: int) -> int | None:
    """Largest admissible number of heavy classes for a separating set of ``size``."""
    if size <= (2 * k - 1) * (n - k) - 1:
        return 2
    if size <= (3 * k - 2) * (n - k) - 3:
        return 3
    return None


# ---------------------------------------------------------------------------
# structure theorems


def regime_budget(n: int, k: int, regime: str) -> int:
    if regime == "thm39":
        return (2 * k - 1) * (n - k) - 1
    if regime == "thm312":
        return (3 * k - 2) * (n - k) - 4 if n >= k + 2 else 3 * n - 8
    raise ValueError(f"unknown regime {regime!r}; choose from {REGIMES}")


def in_theorem_scope(n: int, k: int, regime: str) -> bool:
    regime_budget(n, k, regime)
    return k >= 3 if regime == "thm39" else k >= 4


def classify(g: ArrangementGraph, faults: Iterable[int], regime: str) -> StructureClass:
    """Structure class of G - F for a fault set inside ``regime``'s budget.

    Raises :class:`BudgetExceeded` when ``|F|`` is over budget.  For the
    three-component regime, k = 3 is accepted but lies outside theorem scope
    (see :func:`in_theorem_scope`).
    """
    faults = frozenset(faults)
    budget = regime_budget(g.n, g.k, regime)
    if g.k < 3:
        raise OutOfScope(f"{regime} needs k >= 3, got k={g.k}")
    if len(faults) > budget:
        raise BudgetExceeded(f"|F|={len(faults)} exceeds the {regime} budget {budget}")
    return components(g, faults).classification


def is_violation(cls: StructureClass, regime: str) -> bool:
    return cls is not StructureClass.CONNECTED and cls not in ALLOWED[regime]


# ---------------------------------------------------------------------------
# exhaustive separating-set search


@dataclass
class SeparatingScan:
    """Result of a (possibly truncated) lexicographic sweep over subsets."""

    size: int
    total: int
    examined: int
    sets: list[frozenset[int]] = field(default_factory=list)

    @property
    def exhaustive(self) -> bool:
        return self.examined == self.total


def worker_count() -> int:
    cap = os.environ.get("ARRLAB_THREADS")
    cores = os.cpu_count() or 1
    return max(1, min(cores, int(cap))) if cap else cores


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def _scan_python(g: Graph, size: int, start: int, count: int) -> list[frozenset[int]]:
    nv = g.num_vertices
    adj = [sum(1 << u for u in nb) for nb in g.adjacency]
    full = (1 << nv) - 1
    combo = [int(x) for x in _kernels.unrank_combination(start, nv, size)]
    found = []
    for _ in range(count):
        mask = sum(1 << x for x in combo)
        alive = full & ~mask
        if alive:
            reach = alive & -alive
            frontier = reach
            while frontier:
                grown = reach
                f = frontier
                while f:
                    low = f & -f
                    grown |= adj[low.bit_length() - 1]
                    f ^= low
                grown &= alive
                frontier = grown & ~reach
                reach = grown
            if reach != alive:
                found.append(_mask_to_set(mask))
        i = size - 1
        while i >= 0 and combo[i] == nv - size + i:
            i -= 1
        if i < 0:
            break
        combo[i] += 1
        for j in range(i + 1, size):
            combo[j] = combo[j - 1] + 1
    return found


def enumerate_separating_sets(g: Graph, size: int, budget: int | None = None,
                              chunk: int = 1 << 20) -> SeparatingScan:
    """All separating sets of ``size`` among the first ``budget`` candidates.

    Candidates are visited in lexicographic order of sorted vertex tuples.
    When the budget cuts the sweep short the result has ``exhaustive=False``.
    Work is split into fixed index ranges that run on up to
    ``ARRLAB_THREADS`` threads and are merged in order.
    """
    if size < 1:
        raise ValueError("size must be at least 1")
    nv = g.num_vertices
    total = math.comb(nv, size)
    examined = total if budget is None else min(total, budget)
    ranges = [(s, min(chunk, examined - s)) for s in range(0, examined, chunk)]

    if nv <= 64:
        adj = _kernels.neighbor_masks(g.adjacency)

        def run(rng: tuple[int, int]) -> list[frozenset[int]]:
            combo = _kernels.unrank_combination(rng[0], nv, size)
            masks = _kernels.scan_separating(adj, nv, combo, rng[1])
            return [_mask_to_set(int(m)) for m in masks]
    else:
        def run(rng: tuple[int, int]) -> list[frozenset[int]]:
            return _scan_python(g, size, *rng)

    workers = worker_count()
    if workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, ranges))
    else:
        parts = [run(r) for r in ranges]
    sets = [s for part in parts for s in part]
    return SeparatingScan(size, total, examined, sets)


# ---------------------------------------------------------------------------
# witness fault sets

PATTERNS = ("vertex", "edge", "path", "twin")


@dataclass(frozen=True)
class Witness:
    """Fault set N(core) for a small vertex pattern ``core``."""

    pattern: str
    core: tuple[int, ...]
    faults: frozenset[int]


def find_path_pattern(g: ArrangementGraph, need_partner: bool | None = None) -> tuple[int, int, int]:
    """Smallest (x, y, z) with x~y inside a class and y~z a cross edge.

    With ``need_partner`` (default when n >= k+2) x must also have an outer
    neighbour in z's class, so that x and z sit at distance 2 through two
    routes.
    """
    if need_partner is None:
        need_partner = g.n >= g.k + 2
    for x in range(g.num_vertices):
        ax = g.arrangement(x)
        for y in inner_neighbors(g, x):
            for z in outer_neighbors(g, y):
                if need_partner and g.arrangement(z)[-1] in ax:
                    continue
                return (x, y, z)
    raise OutOfScope(f"no path pattern in A({g.n},{g.k})")


def _check_core(g: Graph, pattern: str, core: tuple[int, ...]) -> None:
    want = {"vertex": 1, "edge": 2, "path": 3, "twin": 2}[pattern]
    if len(core) != want:
        raise ValueError(f"{pattern} pattern needs {want} vertices, got {len(core)}")
    for v in core:
        g._check_vertex(v)
    if pattern == "edge" and not g.has_edge(*core):
        raise ValueError("edge pattern vertices are not adjacent")
    if pattern == "twin":
        x, y = core
        if x == y or g.has_edge(x, y) or not (g.neighbor_set(x) & g.neighbor_set(y)):
            raise ValueError("twin pattern needs two nonadjacent vertices at distance 2")
    if pattern == "path":
        x, y, z = core
        if not isinstance(g, ArrangementGraph):
            raise ValueError("path pattern is defined on arrangement graphs only")
        if not (g.has_edge(x, y) and g.class_of(x) == g.class_of(y)):
            raise ValueError("path pattern needs x~y inside one class")
        if not (g.has_edge(y, z) and g.class_of(y) != g.class_of(z)):
            raise ValueError("path pattern needs y~z to be a cross edge")


def witness_fault_set(g: Graph, pattern: str, core: tuple[int, ...] | None = None) -> Witness:
    """Open neighbourhood of a vertex, edge, path or distance-2 pair.

    Without ``core`` the lexicographically smallest realisation is used; for
    the distance-2 pair the partner of the first vertex is the smallest one
    among those sharing the most neighbours with it.
    """
    if pattern not in PATTERNS:
        raise ValueError(f"unknown pattern {pattern!r}; choose from {PATTERNS}")
    if core is None:
        if pattern == "vertex":
            core = (0,)
        elif pattern == "edge":
            core = next(g.edges(), None)
            if core is None:
                raise OutOfScope("graph has no edges")
        elif pattern == "twin":
            core = None
            for x in range(g.num_vertices):
                second = open_neighborhood(g, g.neighbor_set(x)) - {x} - g.neighbor_set(x)
                if second:
                    shared = {y: len(g.neighbor_set(x) & g.neighbor_set(y)) for y in second}
                    most = max(shared.values())
                    core = (x, min(y for y, c in shared.items() if c == most))
                    break
            if core is None:
                raise OutOfScope("no pair of vertices at distance 2")
        else:
            if not isinstance(g, ArrangementGraph):
                raise ValueError("path pattern is defined on arrangement graphs only")
            core = find_path_pattern(g)
    core = tuple(int(v) for v in core)
    _check_core(g, pattern, core)
    return Witness(pattern, core, open_neighborhood(g, core))


# ---------------------------------------------------------------------------
# random fault sets

STRATEGIES = ("uniform", "neighborhood")


def random_fault_set(g: Graph, max_faults: int, rng: np.random.Generator,
                     strategy: str = "uniform") -> frozenset[int]:
    """Draw a fault set of size at most ``max_faults``.

    ``uniform`` picks a size uniformly in ``0..max_faults`` and then a
    uniform subset of that size.  ``neighborhood`` starts from N(S) for a
    random walk S of 1-3 vertices, perturbs it, and trims to the budget; it
    hits disconnecting sets far more often.
    """
    nv = g.num_vertices
    max_faults = min(max_faults, nv - 1)
    if strategy == "uniform":
        size = int(rng.integers(0, max_faults + 1))
        return frozenset(rng.choice(nv, size=size, replace=False).tolist())
    if strategy != "neighborhood":
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    walk = [int(rng.integers(nv))]
    for _ in range(int(rng.integers(0, 3))):
        nb = [u for u in g.adjacency[walk[-1]] if u not in walk]
        if not nb:
            break
        walk.append(int(nb[rng.integers(len(nb))]))
    faults = set(open_neighborhood(g, walk))
    drop = int(rng.integers(0, 3))
    if drop and faults:
        for v in rng.choice(sorted(faults), size=min(drop, len(faults)), replace=False).tolist():
            faults.discard(v)
    if len(faults) > max_faults:
        faults = set(rng.choice(sorted(faults), size=max_faults, replace=False).tolist())
    room = max_faults - len(faults)
    if room > 0:
        extra = int(rng.integers(0, room + 1))
        others = np.setdiff1d(np.arange(nv), sorted(faults | set(walk)))
        if extra and others.size:
            faults.update(rng.choice(others, size=min(extra, others.size), replace=False).tolist())
    return frozenset(faults)


def iter_random_fault_sets(g: Graph, max_faults: int, trials: int, seed: int,
                           strategy: str = "uniform") -> Iterator[frozenset[int]]:
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        yield random_fault_set(g, max_faults, rng, strategy)
