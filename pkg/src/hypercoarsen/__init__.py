"""Spectral hypergraph coarsening.

Effective resistances of hyperedges are estimated from Krylov embeddings of
the star and clique expansions, low-resistance hyperedges are contracted
level by level, and vertices left isolated are merged into their nearest
neighboring cluster.
"""

__version__ = "0.1.0"

from .coarsen import (
    CoarsenConfig,
    CoarseningHierarchy,
    ContractionPolicy,
    LevelState,
    accumulate_resistance,
    coarsen_multilevel,
    contract_level,
)
from .embedding import EmbeddingConfig, EmbeddingPool, build_embedding_pool, krylov_pool
from .errors import ClusterFormatError, HyperCoarsenError, HypergraphFormatError, MetricError
from .expansion import ExpansionGraph, build_clique, build_star, normalized_adjacency_apply
from .hypergraph import (
    ClusterAssignment,
    Hypergraph,
    parse_hgr,
    read_clusters,
    vertex_degrees,
    write_clusters,
    write_hgr,
)
from .localcluster import build_neighborhood, cluster_centroid, identify_isolated, merge_isolated
from .metrics import EvaluationReport, conductance, cut_and_volume, evaluate_clustering, hypergraph_conductance, rating
from .resistance import ResistanceVector, estimate_resistances, nonlinear_quadratic_form, resistance_ratio

__all__ = [
    "ClusterAssignment", "ClusterFormatError", "CoarsenConfig", "CoarseningHierarchy", "ContractionPolicy",
    "EmbeddingConfig", "EmbeddingPool", "EvaluationReport", "ExpansionGraph", "HyperCoarsenError", "Hypergraph",
    "HypergraphFormatError", "LevelState", "MetricError", "ResistanceVector", "accumulate_resistance",
    "build_clique", "build_embedding_pool", "build_neighborhood", "build_star", "cluster_centroid",
    "coarsen_multilevel", "conductance", "contract_level", "cut_and_volume", "estimate_resistances",
    "evaluate_clustering", "hypergraph_conductance", "identify_isolated", "krylov_pool", "merge_isolated",
    "nonlinear_quadratic_form", "normalized_adjacency_apply", "parse_hgr", "rating", "read_clusters",
    "resistance_ratio", "vertex_degrees", "write_clusters", "write_hgr",
]
