"""Exact fractional decompositions of graphs into weighted triangles and condensation templates."""

from .blowup import blow_up, blowup_decomposition, count_injections
from .condense import IndexedPartition, canonical_tripartition_of_cycle, condense
from .core import (
    FractionalDecomposition,
    Graph,
    ScaledCopy,
    Verification,
    WeightedGraph,
    complete_graph,
    complete_multipartite_graph,
    cycle_graph,
    degree_gcd,
    is_divisible,
    is_scaled_copy,
    path_graph,
    total_weight,
    verify_fractional_decomposition,
    weighted_triangle,
)
from .extremal import (
    build_lemma7_graph,
    build_lemma8_graph,
    lemma7_bound,
    lemma8_bound,
    rho_bipartite_min,
    rho_fourpart_max,
    verify_certificate,
)
from .oracle import enumerate_embeddings, fractional_decomposition_exists
from .pipeline import delta_threshold, diagnose_t_ratios, fractional_triangle_decomposition, triangle_counts
from .triangle import (
    TriangleTemplate,
    cycle_feasibility_simplified,
    decompose_triangle,
    eq2_feasible,
    find_decomposition,
)

__version__ = "0.1.0"
