"""Arrangement graphs, their special families, and a small undirected graph type.

Vertices are dense integer ids ``0..N-1``.  For an arrangement graph the id of
a vertex is the lexicographic rank of its arrangement, so ``build(4, 2)``
numbers ``(1, 2)`` as 0 and ``(4, 3)`` as 11.  Symbols are 1-based everywhere
a caller can see them.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidParameters

Arrangement = tuple[int, ...]
Edge = tuple[int, int]

FAMILIES = ("general", "complete", "star", "alternating-group")


class Graph:
    """Immutable simple undirected graph with sorted adjacency lists.

    Parameters
    ----------
    adjacency : sequence of sequences of int
        ``adjacency[v]`` lists the neighbours of ``v``.  It must be symmetric
        and free of self loops.
    labels : sequence of str, optional
        Human readable vertex labels.  Defaults to the decimal vertex id.
    """

    def __init__(self, adjacency: Sequence[Iterable[int]], labels: Sequence[str] | None = None):
        adj = tuple(tuple(sorted(set(nb))) for nb in adjacency)
        nv = len(adj)
        for v, nb in enumerate(adj):
            for u in nb:
                if not 0 <= u < nv:
                    raise ValueError(f"neighbour {u} of vertex {v} is out of range")
                if u == v:
                    raise ValueError(f"self loop at vertex {v}")
        sets = tuple(frozenset(nb) for nb in adj)
        for v, nb in enumerate(adj):
            for u in nb:
                if v not in sets[u]:
                    raise ValueError(f"adjacency is not symmetric at edge ({v}, {u})")
        if labels is not None and len(labels) != nv:
            raise ValueError("need one label per vertex")
        self._adj = adj
        self._sets = sets
        self._labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[Edge], labels=None) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(num_vertices)]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, labels)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(vertices={self.num_vertices}, edges={self.num_edges})"

    def __len__(self) -> int:
        return len(self._adj)

    @property
    def num_vertices(self) -> int:
        return len(self._adj)

    @cached_property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self._adj) // 2

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Sorted neighbours of ``v``."""
        self._check_vertex(v)
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return self._sets[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self._sets[u]

    def edges(self) -> Iterator[Edge]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nb in enumerate(self._adj):
            for v in nb:
                if u < v:
                    yield (u, v)

    @cached_property
    def min_degree(self) -> int:
        return min((len(nb) for nb in self._adj), default=0)

    @cached_property
    def max_degree(self) -> int:
        return max((len(nb) for nb in self._adj), default=0)

    def label(self, v: int) -> str:
        self._check_vertex(v)
        return self._labels[v] if self._labels is not None else str(v)

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {self.label(v): v for v in range(self.num_vertices)}

    def vertex(self, label: str) -> int:
        """Inverse of :meth:`label`; whitespace inside the label is normalised."""
        key = " ".join(str(label).split())
        try:
            return self._label_index[key]
        except KeyError:
            raise ValueError(f"unknown vertex label {label!r}") from None

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Compressed adjacency ``(indptr, indices)`` as int64 arrays."""
        indptr = np.zeros(self.num_vertices + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(nb) for nb in self._adj])
        indices = np.fromiter(itertools.chain.from_iterable(self._adj), dtype=np.int64,
                              count=int(indptr[-1]))
        return indptr, indices

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < len(self._adj):
            raise IndexError(f"vertex {v} out of range 0..{len(self._adj) - 1}")


# ---------------------------------------------------------------------------
# arrangement codec


def validate_params(n: int, k: int) -> None:
    if not (isinstance(n, (int, np.integer)) and isinstance(k, (int, np.integer))):
        raise InvalidParameters(f"n and k must be integers, got {n!r}, {k!r}")
    if k < 1 or n <= k:
        raise InvalidParameters(f"need n > k >= 1, got n={n}, k={k}")


def arrangement_count(n: int, k: int) -> int:
    """Number of vertices of A(n, k), i.e. n!/(n-k)!."""
    return math.perm(n, k)


def _check_arrangement(a: Sequence[int], n: int, k: int) -> None:
    if len(a) != k:
        raise ValueError(f"arrangement {tuple(a)} must have length {k}")
    if len(set(a)) != k:
        raise ValueError(f"arrangement {tuple(a)} repeats a symbol")
    for s in a:
        if not 1 <= s <= n:
            raise ValueError(f"symbol {s} of {tuple(a)} outside 1..{n}")


def rank(a: Sequence[int], n: int, k: int) -> int:
    """Lexicographic rank of arrangement ``a`` among all k-arrangements of 1..n.

    Position ``i`` contributes (number of unused smaller symbols) times the
    number of ways to finish the remaining ``k-i-1`` positions.
    """
    validate_params(n, k)
    _check_arrangement(a, n, k)
    used = [False] * (n + 1)
    r = 0
    for i, s in enumerate(a):
        smaller = sum(1 for t in range(1, s) if not used[t])
        r += smaller * math.perm(n - i - 1, k - i - 1)
        used[s] = True
    return r


def unrank(index: int, n: int, k: int) -> Arrangement:
    """Inverse of :func:`rank`."""
    validate_params(n, k)
    total = math.perm(n, k)
    if not 0 <= index < total:
        raise IndexError(f"index {index} out of range 0..{total - 1}")
    free = list(range(1, n + 1))
    out = []
    for i in range(k):
        block = math.perm(n - i - 1, k - i - 1)
        q, index = divmod(index, block)
        out.append(free.pop(q))
    return tuple(out)


# ---------------------------------------------------------------------------
# arrangement graphs


class ArrangementGraph(Graph):
    """The (n, k)-arrangement graph A(n, k).

    Vertices are the k-arrangements of ``1..n``; two are adjacent when they
    differ in exactly one position.  ``family`` is a descriptive tag only.
    """

    def __init__(self, n: int, k: int, family: str = "general"):
        validate_params(n, k)
        if family not in FAMILIES:
            raise InvalidParameters(f"unknown family tag {family!r}")
        verts = list(itertools.permutations(range(1, n + 1), k))
        index = {a: i for i, a in enumerate(verts)}
        symbols = range(1, n + 1)
        adj = []
        for a in verts:
            missing = [s for s in symbols if s not in a]
            nb = []
            for p in range(k):
                for s in missing:
                    nb.append(index[a[:p] + (s,) + a[p + 1:]])
            adj.append(nb)
        super().__init__(adj, [" ".join(map(str, a)) for a in verts])
        self.n = int(n)
        self.k = int(k)
        self.family = family
        self._verts = tuple(verts)
        self._index = index

    def __repr__(self) -> str:
        return f"ArrangementGraph(n={self.n}, k={self.k}, family={self.family!r})"

    @property
    def params(self) -> tuple[int, int]:
        return (self.n, self.k)

    @property
    def regular_degree(self) -> int:
        return self.k * (self.n - self.k)

    def arrangement(self, v: int) -> Arrangement:
        self._check_vertex(v)
        return self._verts[v]

    def index(self, a: Sequence[int]) -> int:
        """Vertex id of arrangement ``a``."""
        try:
            return self._index[tuple(a)]
        except KeyError:
            _check_arrangement(a, self.n, self.k)
            raise

    def class_of(self, v: int, position: int | None = None) -> int:
        """Symbol at ``position`` (1-based, default last) of vertex ``v``."""
        position = self.k if position is None else position
        _check_position(self, position)
        return self.arrangement(v)[position - 1]


def build(n: int, k: int) -> ArrangementGraph:
    """Construct A(n, k).

    >>> g = build(4, 2)
    >>> g.num_vertices, g.num_edges
    (12, 24)
    """
    return ArrangementGraph(n, k)


def family(tag: str, n: int) -> ArrangementGraph:
    """A(n, 1) for ``complete``, A(n, n-1) for ``star``, A(n, n-2) for ``alternating-group``."""
    minimum = {"complete": 2, "star": 2, "alternating-group": 3}
    if tag not in minimum:
        raise InvalidParameters(f"unknown family {tag!r}; choose from {sorted(minimum)}")
    if n < minimum[tag]:
        raise InvalidParameters(f"{tag} family needs n >= {minimum[tag]}, got {n}")
    k = {"complete": 1, "star": n - 1, "alternating-group": n - 2}[tag]
    return ArrangementGraph(n, k, family=tag)


@dataclass(frozen=True)
class SubgraphClass:
    """Vertices whose arrangement carries ``symbol`` at ``position``."""

    position: int
    symbol: int
    vertices: tuple[int, ...]


def _check_position(g: ArrangementGraph, position: int) -> None:
    if not 1 <= position <= g.k:
        raise ValueError(f"position {position} outside 1..{g.k}")


def decompose(g: ArrangementGraph, position: int | None = None) -> list[SubgraphClass]:
    """Partition V(A(n,k)) by the symbol at ``position`` (default: last)."""
    position = g.k if position is None else position
    _check_position(g, position)
    buckets: dict[int, list[int]] = {s: [] for s in range(1, g.n + 1)}
    for v in range(g.num_vertices):
        buckets[g.arrangement(v)[position - 1]].append(v)
    return [SubgraphClass(position, s, tuple(vs)) for s, vs in buckets.items()]


def class_labels(g: ArrangementGraph, position: int | None = None) -> np.ndarray:
    """Array mapping each vertex to the symbol at ``position`` (default last)."""
    position = g.k if position is None else position
    _check_position(g, position)
    return np.array([a[position - 1] for a in g._verts], dtype=np.int64)


def cross_edges(g: ArrangementGraph, i: int, j: int) -> list[Edge]:
    """Edges between the last-position classes of symbols ``i`` and ``j``.

    Each edge is returned as ``(u, v)`` with ``u`` in class ``i``.
    """
    if i == j:
        raise ValueError("cross_edges needs two different symbols")
    for s in (i, j):
        if not 1 <= s <= g.n:
            raise ValueError(f"symbol {s} outside 1..{g.n}")
    out = []
    for u in range(g.num_vertices):
        if g.arrangement(u)[-1] != i:
            continue
        for v in g.neighbors(u):
            if g.arrangement(v)[-1] == j:
                out.append((u, v))
    return out


def cross_edge_count(n: int, k: int) -> int:
    """Closed form (n-2)!/(n-k-1)! for the size of every cross-edge set."""
    return math.perm(n - 2, k - 1)


def outer_neighbors(g: ArrangementGraph, v: int) -> tuple[int, ...]:
    """Neighbours of ``v`` outside its last-position class."""
    c = g.arrangement(v)[-1]
    return tuple(u for u in g.neighbors(v) if g.arrangement(u)[-1] != c)


def inner_neighbors(g: ArrangementGraph, v: int) -> tuple[int, ...]:
    """Neighbours of ``v`` inside its last-position class."""
    c = g.arrangement(v)[-1]
    return tuple(u for u in g.neighbors(v) if g.arrangement(u)[-1] == c)


def open_neighborhood(g: Graph, vertices: Iterable[int]) -> frozenset[int]:
    """N(S): vertices adjacent to some member of S, excluding S itself."""
    s = set(vertices)
    out: set[int] = set()
    for v in s:
        out.update(g.neighbor_set(v))
    return frozenset(out - s)


def closed_neighborhood(g: Graph, vertices: Iterable[int]) -> frozenset[int]:
    s = frozenset(vertices)
    return open_neighborhood(g, s) | s


def common_neighbors(g: Graph, u: int, v: int) -> int:
    """Number of vertices adjacent to both ``u`` and ``v``."""
    if u == v:
        raise ValueError("common_neighbors needs two distinct vertices")
    return len(g.neighbor_set(u) & g.neighbor_set(v))


def common_neighbor_formula(n: int, k: int, dist: int) -> int:
    """Predicted common-neighbour count of two vertices at distance ``dist`` in A(n, k)."""
    if dist < 1:
        raise ValueError("distance must be positive")
    if dist == 1:
        return n - k - 1
    if dist == 2:
        return 2 if n >= k + 2 else 1
    return 0


def edge_neighborhood(g: Graph, edge: Edge) -> frozenset[int]:
    """N(e) for an edge ``e = (u, v)``."""
    u, v = edge
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    return open_neighborhood(g, (u, v))


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distances from ``source``; unreachable vertices get -1."""
    g._check_vertex(source)
    dist = np.full(g.num_vertices, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    adj = g.adjacency
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dx
                queue.append(y)
    return dist


def distance(g: Graph, u: int, v: int) -> int:
    d = int(bfs_distances(g, u)[v])
    if d < 0:
        raise ValueError(f"vertices {u} and {v} are not connected")
    return d


def diameter(g: Graph) -> int:
    """Largest shortest-path distance, by a BFS from every vertex."""
    best = 0
    for s in range(g.num_vertices):
        dist = bfs_distances(g, s)
        if (dist < 0).any():
            raise ValueError("graph is disconnected")
        best = max(best, int(dist.max()))
    return best


def diameter_formula(k: int) -> int:
    return (3 * k) // 2


# ---------------------------------------------------------------------------
# other graphs used as diagnosis test beds


def complete_graph(n: int) -> Graph:
    return Graph([[u for u in range(n) if u != v] for v in range(n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameters("a cycle needs at least 3 vertices")
    return Graph([[(v - 1) % n, (v + 1) % n] for v in range(n)])


def hypercube(dim: int) -> Graph:
    n = 1 << dim
    return Graph([[v ^ (1 << b) for b in range(dim)] for v in range(n)],
                 [format(v, f"0{dim}b") for v in range(n)])


def random_graph(num_vertices: int, edge_prob: float, rng: np.random.Generator,
                 min_degree: int = 2, max_tries: int = 1000) -> Graph:
    """Erdos-Renyi sample conditioned on ``min_degree`` by rejection."""
    pairs = list(itertools.combinations(range(num_vertices), 2))
    for _ in range(max_tries):
        keep = rng.random(len(pairs)) < edge_prob
        g = Graph.from_edges(num_vertices, (p for p, b in zip(pairs, keep) if b))
        if g.min_degree >= min_degree:
            return g
    raise RuntimeError(f"no graph with min degree {min_degree} after {max_tries} draws")
