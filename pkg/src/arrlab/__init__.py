"""Arrangement graphs: fault resilience and comparison-based conditional diagnosis."""

from .diagnosis import (Comparison, DistinguishResult, ForcedValue, Syndrome, comparison_scheme,
                        conditional_diagnosability_bound, distinguishable_forced, distinguishable_sd,
                        forced_value, is_compatible, is_conditional, sample_lower_bound,
                        simulate_syndrome, tc_exhaustive, tc_witness_pair)
from .errors import ArrlabError, BudgetExceeded, InvalidParameters, OutOfScope
from .faults import (ComponentReport, FaultProfile, StructureClass, check_light_side_connected,
                     classify, components, connectivity, enumerate_separating_sets, fault_profile,
                     is_separating, witness_fault_set)
from .graph import (ArrangementGraph, Graph, build, common_neighbors, cross_edges, decompose,
                    diameter, distance, edge_neighborhood, family, rank, unrank)

__version__ = "0.1.0"
