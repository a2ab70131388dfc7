"""
Telling fault sets apart by comparisons
=======================================

Each processor compares every pair of its neighbours.  Two fault sets can
be told apart exactly when some comparison is forced to different values by
them.  We check the closed-form diagnosability on A(6,4) and A(5,4).
"""

from arrlab import diagnosis as dg
from arrlab.graph import build, hypercube

g = build(6, 4)
t = dg.conditional_diagnosability_bound(g)
print("conditional diagnosability of A(6,4):", t)

# One past the bound there is a pair nobody can tell apart.
pair = dg.tc_witness_pair(g)
print("witness sizes:", len(pair.f1), len(pair.f2))
print("distinguishable?", dg.distinguishable_sd(g, pair.f1, pair.f2).distinguishable)

# A single syndrome explains both fault sets.
s = dg.simulate_syndrome(g, pair.f1, "frame-other", other=pair.f2)
print("compatible with both:", dg.is_compatible(g, pair.f1, s), dg.is_compatible(g, pair.f2, s))

# At the bound itself random conditional pairs are always distinguishable.
report = dg.sample_lower_bound(build(5, 4), 8, trials=2000, seed=0, strategy="neighborhood")
print("A(5,4), t=8:", report.checked, "pairs,", len(report.violations), "indistinguishable")

# On tiny graphs the exact value comes from checking every pair.
res = dg.tc_exhaustive(hypercube(3))
print("exact t_c of Q3:", res.value, "after", res.pairs_checked, "pairs")
