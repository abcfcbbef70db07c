"""Ultrametric arboreal networks: uprooting weighted trees, and recognizing and
reconstructing arboreal ultrametrics from partial distances."""

from .graph import (
    Check,
    InducedCycleWitness,
    PerfectEliminationOrdering,
    UndirectedGraph,
    chordality_certificate,
    find_induced_gem,
    find_induced_w5,
    is_connected,
    is_ptolemaic,
    maximal_cliques_chordal,
)
from .matrix import DistanceMatrix, MatrixError, PartialDistance
from .network import (
    ArborealNetwork,
    InvalidNetwork,
    VertexHeights,
    canonical_form,
    descendant_leaves,
    heights,
    induced_distance,
    induced_partial_distance,
    is_isomorphic,
    is_ultrametric_network,
    lca,
    normalize_leaves,
    shared_ancestry_graph,
    suppress_outdegree1,
    underlying_weighted_tree,
    validate,
)
from .phylo import (
    InvalidTree,
    WeightedPhyloTree,
    check_four_point,
    check_three_point_ultrametric,
    compute_wcps,
    equidistant_tree_from_ultrametric,
    is_wcps,
    leaf_distance_matrix,
    path_length,
    restrict,
    tree_from_distance,
)
from .rational import INF
from .recognize import (
    NotArborealUltrametric,
    RecognitionReport,
    ReconstructionError,
    check_gem_free_consequence,
    check_u1,
    check_u2,
    check_u3,
    reconstruct,
    recognize,
    restriction_is_arboreal,
    support_graph,
)
from .uproot import (
    closest_leaves,
    is_weight_preserving_uprooting,
    ultrametric_uprooting,
    uprooting_steps,
    uprooting_via_orientation,
)

__version__ = "0.1.0"
