"""Covering edge-coloured graphs with monochromatic components, exactly.

A library and CLI for the component-cover problem on coloured graphs and
its reformulation as vertex covers of r-partite r-uniform hypergraphs:
exact solvers, constructive lower-bound machinery, bounded extremal
searches, and a seeded, bit-reproducible experiment harness.
"""

__version__ = "0.1.0"

from .errors import (ArityTooSmall, BudgetExceeded, ContradictionError,
                     CounterexampleFound, IncompatibleAssignment,
                     InfeasibleArity, InputNotACover, MonocoverError,
                     NotFound, PreconditionViolated, RefinementViolation,
                     TargetUnreachable)
from .graphs import (ColouredGraph, ComponentMap, Graph, RandomModel,
                     components, find_sparse_independent_set,
                     is_component_cover, max_tree_cover_number, sample_gnp,
                     tree_cover_number)
from .hypergraphs import (CoverCertificate, PartiteHypergraph, cover_number,
                          critical_subgraph, four_disjoint_edges, is_cover,
                          max_matching, minimum_cover, parity_quad,
                          skew_matching)
from .component_hypergraph import (ComponentHypergraph,
                                   build_component_hypergraph, collapse_cover,
                                   component_cover_to_vertex_cover,
                                   most_frequent_edge,
                                   vertex_cover_to_component_cover,
                                   witness_set)
from .adversarial import (EdgeAssignment, IntersectionGraph,
                          assignment_from_independent_set, build_colouring,
                          check_surjective_homomorphism, intersection_graph,
                          verify_lower_bound)
from .coverability import (CoverChain, CoverFamily, check_chain,
                           check_cover_family, classify_intersecting_3graph,
                           compute_extremal, four_disjoint_cover_family,
                           multiplicity_level_chain, refute_coverability,
                           search_chain, search_cover_family)
from .enumeration import count_classes_naive, enumerate_hypergraphs
