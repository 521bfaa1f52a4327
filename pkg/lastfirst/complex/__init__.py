from lastfirst.complex.homology import betti, boundary_matrix, gf2_rank
from lastfirst.complex.nerve import SimplicialComplex, nerve
from lastfirst.complex.sweep import (
    PersistenceSweep,
    ReplicateSweep,
    cover_kind_for,
    dominance_range,
    landmark_persistence_sweep,
)

__all__ = [
    "PersistenceSweep",
    "ReplicateSweep",
    "SimplicialComplex",
    "betti",
    "boundary_matrix",
    "cover_kind_for",
    "dominance_range",
    "gf2_rank",
    "landmark_persistence_sweep",
    "nerve",
]
