"""Structural graph invariants used as model features."""
from .cliques import (
    clique_cover_estimate,
    clique_number,
    domination_and_covers,
    domination_number,
    independence_number,
    k_clique_communities_3,
    maximal_cliques,
    maximum_matching_size,
)
from .connectivity import (
    count_min_node_cuts,
    has_bridge,
    local_connectivity,
    node_connectivity,
    pairwise_connectivity_stats,
)
from .features import FEATURE_NAMES, SCHEMA_VERSION, FeatureVector, extract_features
from .local import avg_neighbor_degree_stats, clustering_stats, distance_stats
from .maxcut import maxcut_heuristics
from .structure import is_at_free, is_bipartite, is_planar, jacobi_eigenvalues, spectral_bipartivity
from .width import chordal_treewidth, is_chordal, treewidth, treewidth_exact


def clique_and_independence(g):
    """(clique_number, num_maximal_cliques, independence_number, clique_cover_estimate, k_clique_communities_3)."""
    return (
        clique_number(g),
        len(maximal_cliques(g)),
        independence_number(g),
        clique_cover_estimate(g),
        k_clique_communities_3(g),
    )


def structural_flags(g):
    """(is_planar, is_chordal, is_at_free, spectral_bipartivity)."""
    return is_planar(g), is_chordal(g), is_at_free(g), spectral_bipartivity(g)
