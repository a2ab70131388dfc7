"""
How arrangement graphs break
============================

Delete vertices and look at what is left.  Small fault sets either leave
the graph connected or cut off a single vertex or a single edge; one step
further, a second isolated vertex can appear.
"""

from collections import Counter

from arrlab import faults as ft
from arrlab.graph import build

# Connectivity equals the degree: no set smaller than a neighbourhood disconnects.
small = build(5, 3)
print("A(5,3): connectivity", ft.connectivity(small), "degree", small.regular_degree)

g = build(6, 4)

# The neighbourhood of one vertex isolates it.
w = ft.witness_fault_set(g, "vertex")
print(len(w.faults), "faults ->", ft.components(g, w.faults).class_name)

# The neighbourhood of an edge cuts off that edge.
w = ft.witness_fault_set(g, "edge")
print(len(w.faults), "faults ->", ft.components(g, w.faults).class_name)

# Two vertices at distance 2 sharing two neighbours need only 14 faults to
# be cut off together, leaving three components.
w = ft.witness_fault_set(g, "twin")
print(len(w.faults), "faults ->", ft.components(g, w.faults).class_name)

# Random campaign inside the larger budget.
budget = ft.regime_budget(g.n, g.k, "thm312")
shapes = Counter()
for f in ft.iter_random_fault_sets(g, budget, 5000, seed=1, strategy="neighborhood"):
    shapes[ft.components(g, f).class_name] += 1
print(f"shapes with |F| <= {budget}:", dict(shapes))

# A(4,2) is too small for the structure results: four faults can split it
# into two 4-cycles.
small = build(4, 2)
scan = ft.enumerate_separating_sets(small, 4)
for f in scan.sets:
    rep = ft.components(small, f)
    if [len(c) for c in rep.components] == [4, 4]:
        print("A(4,2) cut", sorted(small.label(v) for v in f), "->", rep.class_name)
        break
