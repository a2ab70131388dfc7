"""
Arrangement graphs up close
===========================

Build a few arrangement graphs, look at their labels and neighbours, and
split them into classes by the last symbol.
"""

import numpy as np

from arrlab.graph import build, cross_edges, decompose, diameter, edge_neighborhood

# A(4,2): ordered pairs of distinct symbols from 1..4, joined when they
# differ in exactly one position.
g = build(4, 2)
print(g.num_vertices, "vertices,", g.num_edges, "edges")
for v in range(4):
    print(g.label(v), "->", [g.label(u) for u in g.neighbors(v)])

# Grouping by the last symbol gives n copies of A(n-1, k-1); in A(4,2)
# these are four triangles.
for c in decompose(g):
    print("class", c.symbol, [g.label(v) for v in c.vertices])

# Between any two classes the cross edges form a perfect matching.
g = build(6, 4)
print("A(6,4) cross edges between classes 1 and 2:", len(cross_edges(g, 1, 2)))

# Every edge has the same number of neighbours, and the diameter grows
# like 3k/2.
sizes = {len(edge_neighborhood(g, e)) for e in g.edges()}
print("|N(e)| values:", sizes)
for k in (2, 3, 4):
    print(f"diameter of A(6,{k}):", diameter(build(6, k)))

# Every vertex has degree k(n-k).
degrees = np.array([g.degree(v) for v in range(g.num_vertices)])
print("degrees of A(6,4):", np.unique(degrees))
