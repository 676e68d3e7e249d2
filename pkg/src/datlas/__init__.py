"""datlas: diffusion-map characterization of random walks on sparse networks."""

__version__ = "0.1.0"

from .graph import (SparseGraph, TransitionOperator, build_graph,
                    largest_connected_component, transition_apply)
from .spectral import (SpectralBasis, build_basis, estimate_truncation_error,
                       load_basis, propagate, relaxation_time, save_basis)
from .diffusion import (DiffusionEmbedding, ProbabilityField, aggregate_field,
                        diffusion_distance2, embed, probability_field,
                        stationary)
from .communities import (CommunityFeatures, CommunityPartition,
                          cheeger_mixing, community_features,
                          entry_exit_probabilities, heterogeneity_summary,
                          kmeans_diffusion, rank_communities, time_grid)
from .centrality import (CentralityScores, betweenness, closeness,
                         eigenvector_centrality, gmfpt, max_remoteness)
from .generators import generate
from .pipeline import export_report, load_bundle, run_pipeline

__all__ = [
    "SparseGraph", "TransitionOperator", "build_graph",
    "largest_connected_component", "transition_apply",
    "SpectralBasis", "build_basis", "estimate_truncation_error",
    "load_basis", "propagate", "relaxation_time", "save_basis",
    "DiffusionEmbedding", "ProbabilityField", "aggregate_field",
    "diffusion_distance2", "embed", "probability_field", "stationary",
    "CommunityFeatures", "CommunityPartition", "cheeger_mixing",
    "community_features", "entry_exit_probabilities",
    "heterogeneity_summary", "kmeans_diffusion", "rank_communities",
    "time_grid",
    "CentralityScores", "betweenness", "closeness",
    "eigenvector_centrality", "gmfpt", "max_remoteness",
    "generate", "export_report", "load_bundle", "run_pipeline",
]
