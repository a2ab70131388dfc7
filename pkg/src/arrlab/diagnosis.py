"""Comparison-based diagnosis with processor comparators (the MM* scheme).

Every vertex ``w`` compares every unordered pair ``{u, v}`` of its
neighbours.  A fault-free comparator reports 0 exactly when both compared
vertices are fault-free; a faulty comparator may report anything.  Two fault
sets are indistinguishable when some syndrome is compatible with both, which
happens exactly when no comparison is forced to 0 by one set and to 1 by the
other.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple

import numpy as np

from .errors import BudgetExceeded, OutOfScope
from .faults import fault_mask, find_path_pattern, survivor_labels
from .graph import ArrangementGraph, Graph, closed_neighborhood


class Comparison(NamedTuple):
    """Comparison ``(u, v)_w`` with ``u < v`` and comparator ``w``."""

    u: int
    v: int
    w: int


class ComparisonScheme:
    """All comparisons of a graph, ordered by comparator then pair."""

    def __init__(self, g: Graph):
        rows = [(u, v, w) for w in range(g.num_vertices)
                for u, v in itertools.combinations(g.adjacency[w], 2)]
        arr = np.array(rows, dtype=np.int64).reshape(-1, 3)
        self.graph = g
        self.u = arr[:, 0]
        self.v = arr[:, 1]
        self.w = arr[:, 2]

    def __len__(self) -> int:
        return len(self.w)

    def __getitem__(self, i: int) -> Comparison:
        return Comparison(int(self.u[i]), int(self.v[i]), int(self.w[i]))

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    def index(self, c: Comparison) -> int:
        hit = np.flatnonzero((self.u == c.u) & (self.v == c.v) & (self.w == c.w))
        if not hit.size:
            raise KeyError(f"{c} is not in the comparison scheme")
        return int(hit[0])


@lru_cache(maxsize=16)
def comparison_scheme(g: Graph) -> ComparisonScheme:
    return ComparisonScheme(g)


class ForcedValue(Enum):
    FORCED0 = 0
    FORCED1 = 1
    FREE = -1


def forced_value(faults: Iterable[int], c: Comparison) -> ForcedValue:
    faults = frozenset(faults)
    if c.w in faults:
        return ForcedValue.FREE
    if c.u in faults or c.v in faults:
        return ForcedValue.FORCED1
    return ForcedValue.FORCED0


def forced_values(g: Graph, faults: Iterable[int]) -> np.ndarray:
    """Forced outcome of every comparison: 0, 1, or -1 when the comparator is faulty."""
    sch = comparison_scheme(g)
    mask = fault_mask(g, faults)
    out = (mask[sch.u] | mask[sch.v]).astype(np.int8)
    out[mask[sch.w]] = -1
    return out


# ---------------------------------------------------------------------------
# syndromes


@dataclass(frozen=True, eq=False)
class Syndrome:
    """0/1 outcome of every comparison in ``scheme``."""

    scheme: ComparisonScheme
    outcomes: np.ndarray

    def __getitem__(self, c: Comparison) -> int:
        return int(self.outcomes[self.scheme.index(c)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Syndrome) and self.scheme is other.scheme
                and np.array_equal(self.outcomes, other.outcomes))


ADVERSARIES = ("all-zero", "all-one", "random", "frame-other")


def simulate_syndrome(g: Graph, faults: Iterable[int], adversary: str = "random",
                      seed: int | None = None, other: Iterable[int] | None = None) -> Syndrome:
    """Syndrome produced by ``faults`` when faulty comparators follow ``adversary``.

    ``frame-other`` makes every free comparison show what ``other`` would
    force (0 where ``other`` forces nothing).
    """
    sch = comparison_scheme(g)
    forced = forced_values(g, faults)
    free = forced < 0
    if adversary == "all-zero":
        fill = np.zeros(len(sch), dtype=np.int8)
    elif adversary == "all-one":
        fill = np.ones(len(sch), dtype=np.int8)
    elif adversary == "random":
        fill = np.random.default_rng(seed).integers(0, 2, size=len(sch)).astype(np.int8)
    elif adversary == "frame-other":
        if other is None:
            raise ValueError("frame-other needs the framed fault set")
        fill = np.maximum(forced_values(g, other), 0)
    else:
        raise ValueError(f"unknown adversary {adversary!r}; choose from {ADVERSARIES}")
    outcomes = np.where(free, fill, forced).astype(np.uint8)
    return Syndrome(sch, outcomes)


def is_compatible(g: Graph, faults: Iterable[int], s: Syndrome) -> bool:
    """Whether ``s`` can arise with exactly ``faults`` faulty."""
    sch = comparison_scheme(g)
    if s.scheme is not sch and (len(s.scheme) != len(sch) or s.scheme.graph is not g):
        raise ValueError("syndrome is not defined on this graph's comparison scheme")
    if s.outcomes.shape != (len(sch),):
        raise ValueError("syndrome length does not match the comparison scheme")
    forced = forced_values(g, faults)
    fixed = forced >= 0
    return bool(np.array_equal(s.outcomes[fixed], forced[fixed]))


# ---------------------------------------------------------------------------
# distinguishability


@dataclass(frozen=True)
class DistinguishResult:
    distinguishable: bool
    witness: Comparison | None = None
    condition: str | None = None

    def to_json(self, g: Graph, f1: Iterable[int], f2: Iterable[int]) -> dict:
        w = None
        if self.witness is not None:
            c = self.witness
            w = {"u": g.label(c.u), "v": g.label(c.v), "w": g.label(c.w), "condition": self.condition}
        return {
            "f1": [g.label(v) for v in sorted(f1)],
            "f2": [g.label(v) for v in sorted(f2)],
            "distinguishable": self.distinguishable,
            "witness": w,
        }


def _pair_masks(g: Graph, f1, f2) -> tuple[np.ndarray, np.ndarray]:
    m1, m2 = fault_mask(g, f1), fault_mask(g, f2)
    if np.array_equal(m1, m2):
        raise ValueError("the two fault sets are identical")
    return m1, m2


def distinguishable_sd(g: Graph, f1: Iterable[int], f2: Iterable[int]) -> DistinguishResult:
    """Scan the scheme for the first comparison meeting a Sengupta-Dahbura condition.

    SD-1: comparator and one compared vertex outside F1 u F2, the other
    compared vertex in the symmetric difference.  SD-2: comparator outside
    F1 u F2, both compared vertices in F1 - F2 (or both in F2 - F1).
    """
    m1, m2 = _pair_masks(g, f1, f2)
    sch = comparison_scheme(g)
    union = m1 | m2
    sym = m1 ^ m2
    good_w = ~union[sch.w]
    cond1 = good_w & ((~union[sch.u] & sym[sch.v]) | (~union[sch.v] & sym[sch.u]))
    only1, only2 = m1 & ~m2, m2 & ~m1
    cond2 = good_w & ((only1[sch.u] & only1[sch.v]) | (only2[sch.u] & only2[sch.v]))
    hit = cond1 | cond2
    if not hit.any():
        return DistinguishResult(False)
    i = int(np.argmax(hit))
    return DistinguishResult(True, sch[i], "SD-1" if cond1[i] else "SD-2")


def distinguishable_forced(g: Graph, f1: Iterable[int], f2: Iterable[int]) -> DistinguishResult:
    """Distinguishable iff one comparison is forced to 0 by one set and to 1 by the other."""
    m1, m2 = _pair_masks(g, f1, f2)
    a = forced_values(g, np.flatnonzero(m1))
    b = forced_values(g, np.flatnonzero(m2))
    clash = (a >= 0) & (b >= 0) & (a != b)
    if not clash.any():
        return DistinguishResult(False)
    i = int(np.argmax(clash))
    c = comparison_scheme(g)[i]
    sym = m1 ^ m2
    return DistinguishResult(True, c, "SD-2" if sym[c.u] and sym[c.v] else "SD-1")


def is_conditional(g: Graph, faults: Iterable[int]) -> bool:
    """True iff no surviving vertex has all its neighbours faulty."""
    return _conditional_mask(g, fault_mask(g, faults))


def _conditional_mask(g: Graph, mask: np.ndarray) -> bool:
    indptr, indices = g.csr
    alive = ~mask
    owner = np.repeat(np.arange(g.num_vertices), np.diff(indptr))
    live_nb = np.bincount(owner, weights=alive[indices], minlength=g.num_vertices)
    return not bool((alive & (live_nb == 0)).any())


# ---------------------------------------------------------------------------
# arrangement-graph closed forms and witnesses


def conditional_diagnosability_bound(g: ArrangementGraph | tuple[int, int]) -> int:
    """Closed-form conditional diagnosability of A(n, k) for k >= 4."""
    n, k = (g.n, g.k) if isinstance(g, ArrangementGraph) else g
    if k < 4:
        raise OutOfScope(f"closed form covers k >= 4 only, got k={k}")
    return (3 * k - 2) * (n - k) - 3 if n >= k + 2 else 3 * n - 7


@dataclass(frozen=True)
class WitnessPair:
    """Two conditional fault sets of size t_c + 1 that no syndrome tells apart."""

    f1: frozenset[int]
    f2: frozenset[int]
    path: tuple[int, int, int]


def tc_witness_pair(g: ArrangementGraph) -> WitnessPair:
    """F1 = N[x,y,z] - {y,z} and F2 = N[x,y,z] - {x,y} for a path x-y-z.

    x~y lies inside one class and y~z is a cross edge; for n >= k+2 x also
    has an outer neighbour u in z's class (so u~z).
    """
    if not isinstance(g, ArrangementGraph):
        raise OutOfScope("witness pairs are built on arrangement graphs")
    if g.k < 4:
        raise OutOfScope(f"witness pair needs k >= 4, got k={g.k}")
    x, y, z = find_path_pattern(g)
    closed = closed_neighborhood(g, (x, y, z))
    return WitnessPair(closed - {y, z}, closed - {x, y}, (x, y, z))


# ---------------------------------------------------------------------------
# sampled lower bound


@dataclass
class SamplingReport:
    seed: int
    trials: int
    t: int
    strategy: str
    violations: list[tuple[frozenset[int], frozenset[int]]] = field(default_factory=list)
    sampling_failures: int = 0
    checked: int = 0

    def to_json(self, g: Graph) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "t": self.t,
            "strategy": self.strategy,
            "checked": self.checked,
            "sampling_failures": self.sampling_failures,
            "violations": [{"f1": [g.label(v) for v in sorted(a)], "f2": [g.label(v) for v in sorted(b)]}
                           for a, b in self.violations],
        }


MAX_RETRIES = 1000
PAIR_STRATEGIES = ("uniform", "neighborhood")


def _draw_conditional(g: Graph, t: int, rng: np.random.Generator) -> frozenset[int] | None:
    nv = g.num_vertices
    for _ in range(MAX_RETRIES):
        size = int(rng.integers(0, t + 1))
        pick = rng.choice(nv, size=size, replace=False)
        mask = np.zeros(nv, dtype=bool)
        mask[pick] = True
        if _conditional_mask(g, mask):
            return frozenset(pick.tolist())
    return None


def _draw_near_pair(g: Graph, t: int, rng: np.random.Generator):
    """Pair built like the tight witness: closed neighbourhood of a random path minus core vertices."""
    nv = g.num_vertices
    for _ in range(MAX_RETRIES):
        walk = [int(rng.integers(nv))]
        for _ in range(2):
            nb = [u for u in g.adjacency[walk[-1]] if u not in walk]
            if nb:
                walk.append(int(nb[rng.integers(len(nb))]))
        base = closed_neighborhood(g, walk)
        keep1 = set(rng.choice(walk, size=min(2, len(walk)), replace=False).tolist())
        keep2 = set(rng.choice(walk, size=min(2, len(walk)), replace=False).tolist())
        f1, f2 = set(base - keep1), set(base - keep2)
        for f in (f1, f2):
            if len(f) > t:
                drop = rng.choice(sorted(f), size=len(f) - t, replace=False)
                f.difference_update(drop.tolist())
        f1, f2 = frozenset(f1), frozenset(f2)
        if f1 != f2 and is_conditional(g, f1) and is_conditional(g, f2):
            return f1, f2
    return None


def sample_lower_bound(g: Graph, t: int, trials: int, seed: int, strategy: str = "uniform",
                       inject: Iterable[tuple[Iterable[int], Iterable[int]]] = (),
                       on_pair: Callable[[frozenset[int], frozenset[int]], None] | None = None,
                       ) -> SamplingReport:
    """Check ``trials`` random pairs of distinct conditional fault sets of size <= t.

    Any indistinguishable pair is recorded as a violation.  ``inject`` adds
    fixed pairs (for instance a known tight witness) to the campaign;
    ``on_pair`` sees every pair that gets checked.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if strategy not in PAIR_STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {PAIR_STRATEGIES}")
    rng = np.random.default_rng(seed)
    report = SamplingReport(seed, trials, t, strategy)

    def check(f1: frozenset[int], f2: frozenset[int]) -> None:
        report.checked += 1
        if on_pair is not None:
            on_pair(f1, f2)
        if not distinguishable_forced(g, f1, f2).distinguishable:
            report.violations.append((f1, f2))

    for a, b in inject:
        a, b = frozenset(a), frozenset(b)
        if max(len(a), len(b)) <= t and a != b and is_conditional(g, a) and is_conditional(g, b):
            check(a, b)
    for _ in range(trials):
        if strategy == "neighborhood":
            pair = _draw_near_pair(g, t, rng)
        else:
            f1 = _draw_conditional(g, t, rng)
            f2 = _draw_conditional(g, t, rng) if f1 is not None else None
            for _ in range(MAX_RETRIES):
                if f2 is None or f2 != f1:
                    break
                f2 = _draw_conditional(g, t, rng)
            pair = None if f1 is None or f2 is None or f1 == f2 else (f1, f2)
        if pair is None:
            report.sampling_failures += 1
            continue
        check(*pair)
    return report


def largest_component_contains_difference(g: Graph, f1: Iterable[int], f2: Iterable[int]) -> bool:
    """Whether every vertex of F1 ^ F2 lies in the largest component of G - (F1 & F2)."""
    f1, f2 = frozenset(f1), frozenset(f2)
    labels = survivor_labels(g, fault_mask(g, f1 & f2))
    live = labels[labels >= 0]
    if not live.size:
        return not (f1 ^ f2)
    sizes = np.bincount(live)
    biggest = int(np.argmax(sizes))
    return all(labels[v] == biggest for v in f1 ^ f2)


# ---------------------------------------------------------------------------
# exact conditional diagnosability of small graphs


@dataclass
class TcResult:
    """Exact t_c with a certificate pair of size <= t_c + 1 (None when none exists)."""

    value: int
    certificate: tuple[frozenset[int], frozenset[int]] | None
    pairs_checked: int
    disagreements: list[tuple[frozenset[int], frozenset[int]]] = field(default_factory=list)


def tc_exhaustive(g: Graph, t_max: int | None = None, budget: int = 5_000_000) -> TcResult:
    """Exact conditional diagnosability by checking every pair, size level by size level.

    Pairs at level t are those of distinct conditional sets with larger size
    exactly t.  Both distinguishability checkers run on every pair; any
    disagreement is recorded.  Raises :class:`BudgetExceeded` (with the
    largest fully verified t as ``partial``) when the pair count would pass
    ``budget``.  If no indistinguishable pair exists up to ``t_max`` the
    result carries ``value = t_max`` and no certificate.
    """
    nv = g.num_vertices
    t_max = nv - 1 if t_max is None else min(t_max, nv - 1)
    levels: list[list[frozenset[int]]] = []
    for s in range(t_max + 1):
        levels.append([frozenset(c) for c in itertools.combinations(range(nv), s)
                       if is_conditional(g, c)])
    checked = 0
    disagreements = []
    below: list[frozenset[int]] = []
    for t in range(t_max + 1):
        level = levels[t]
        new_pairs = len(level) * len(below) + math.comb(len(level), 2)
        if checked + new_pairs > budget:
            raise BudgetExceeded(f"t={t} needs {checked + new_pairs} pairs, budget {budget}",
                                 partial=t - 1)
        found = None
        for i, a in enumerate(level):
            for b in itertools.chain(below, level[i + 1:]):
                checked += 1
                sd = distinguishable_sd(g, a, b).distinguishable
                fv = distinguishable_forced(g, a, b).distinguishable
                if sd != fv:
                    disagreements.append((a, b))
                if not fv and found is None:
                    found = (a, b)
        if found is not None:
            return TcResult(t - 1, found, checked, disagreements)
        below.extend(level)
    return TcResult(t_max, None, checked, disagreements)
