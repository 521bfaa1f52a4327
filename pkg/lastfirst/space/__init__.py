from lastfirst.space.dissimilarity import (
    ColocationPartition,
    DissimilaritySpace,
    build_space,
    colocation,
    cosine_distance_space,
    euclidean_space,
    gower_distance_space,
    shortest_path_space,
)
from lastfirst.space.io import load_coordinates, load_matrix, load_mixed_table, load_outcomes, load_space
from lastfirst.space.ranks import (
    in_rank,
    k_neighborhood,
    out_rank,
    rank_matrix,
    rank_row,
    rank_sequence,
    revlex_compare,
    revlex_key,
)

__all__ = [
    "ColocationPartition",
    "DissimilaritySpace",
    "build_space",
    "colocation",
    "cosine_distance_space",
    "euclidean_space",
    "gower_distance_space",
    "in_rank",
    "k_neighborhood",
    "load_coordinates",
    "load_matrix",
    "load_mixed_table",
    "load_outcomes",
    "load_space",
    "out_rank",
    "rank_matrix",
    "rank_row",
    "rank_sequence",
    "revlex_compare",
    "revlex_key",
    "shortest_path_space",
]
