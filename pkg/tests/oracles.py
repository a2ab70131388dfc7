"""Slow reference computations that share no code with the package."""

import itertools

import networkx as nx


def nx_graph(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.num_vertices))
    h.add_edges_from(g.edges())
    return h


def lex_arrangements(n, k):
    return sorted(itertools.permutations(range(1, n + 1), k))


def brute_arrangement_graph(n, k):
    verts = lex_arrangements(n, k)
    h = nx.Graph()
    h.add_nodes_from(range(len(verts)))
    for (i, a), (j, b) in itertools.combinations(enumerate(verts), 2):
        if sum(x != y for x, y in zip(a, b)) == 1:
            h.add_edge(i, j)
    return verts, h


def mm_comparisons(h):
    """(u, v, w) for every comparator w and pair of its neighbours."""
    out = []
    for w in sorted(h.nodes):
        for u, v in itertools.combinations(sorted(h.neighbors(w)), 2):
            out.append((u, v, w))
    return out


def compatible_syndromes(h, faults):
    """Every 0/1 outcome vector (as a tuple) that the fault set can produce."""
    faults = set(faults)
    options = []
    for u, v, w in mm_comparisons(h):
        if w in faults:
            options.append((0, 1))
        elif u in faults or v in faults:
            options.append((1,))
        else:
            options.append((0,))
    return set(itertools.product(*options))


def distinguishable_by_enumeration(h, f1, f2):
    return not (compatible_syndromes(h, f1) & compatible_syndromes(h, f2))


def distinguishable_by_sets(h, f1, f2):
    """Conditions of the comparison-model characterisation, written with plain sets."""
    f1, f2 = set(f1), set(f2)
    union, sym = f1 | f2, f1 ^ f2
    for u, v, w in mm_comparisons(h):
        if w in union:
            continue
        if (u not in union and v in sym) or (v not in union and u in sym):
            return True
        if {u, v} <= f1 - f2 or {u, v} <= f2 - f1:
            return True
    return False


def no_isolated_survivor(h, faults):
    faults = set(faults)
    return all(any(y not in faults for y in h.neighbors(x)) for x in h.nodes if x not in faults)
