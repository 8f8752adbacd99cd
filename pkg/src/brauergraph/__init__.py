"""Exact computational toolkit for Brauer graph algebras.

Ribbon-graph combinatorics, quiver presentations with exact rational
coefficients, the full derived-invariant bundle, Kauer mutation with
search, and A-infinity Brauer graph categories with relation checking.
"""

from .ribbon import (BrauerGraph, RibbonGraph, from_cycles, validate,
                     enumerate_graphs, star, path_graph, polygon)
from .algebra import (build_quiver, basis_and_dimension, gentle_quotient,
                      trivial_extension, is_caterpillar)
from .invariants import (invariant_bundle, derived_equivalent,
                         partition_into_classes)
from .kauer import classify_edge, kauer_move, mutation_search

__all__ = [
    "BrauerGraph", "RibbonGraph", "from_cycles", "validate",
    "enumerate_graphs", "star", "path_graph", "polygon",
    "build_quiver", "basis_and_dimension", "gentle_quotient",
    "trivial_extension", "is_caterpillar",
    "invariant_bundle", "derived_equivalent", "partition_into_classes",
    "classify_edge", "kauer_move", "mutation_search",
]
