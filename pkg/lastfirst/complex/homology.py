import numpy as np
from scipy.sparse import coo_matrix

from lastfirst.complex.nerve import SimplicialComplex
from lastfirst.core.utils import InsufficientDimCapError


def gf2_rank(matrix: np.ndarray) -> int:
    """Rank over the two-element field by XOR row reduction on bit-packed rows."""
    m = (np.asarray(matrix) % 2).astype(bool)
    if m.size == 0:
        return 0
    if m.shape[1] > m.shape[0]:
        m = m.T
    rows, cols = m.shape
    packed = np.packbits(m, axis=1)
    rank = 0
    for c in range(cols):
        byte, bit = divmod(c, 8)
        mask = np.uint8(0x80 >> bit)
        hits = np.flatnonzero(packed[rank:, byte] & mask)
        if hits.size == 0:
            continue
        pivot = rank + hits[0]
        if pivot != rank:
            packed[[rank, pivot]] = packed[[pivot, rank]]
        below = rank + 1 + np.flatnonzero(packed[rank + 1:, byte] & mask)
        packed[below, byte:] ^= packed[rank, byte:]
        rank += 1
        if rank == rows:
            break
    return rank


def boundary_matrix(complex_: SimplicialComplex, dim: int) -> coo_matrix:
    """Mod-2 boundary from ``dim``-simplices (columns) to their facets (rows)."""
    faces = {face: i for i, face in enumerate(complex_.of_dim(dim - 1))}
    cells = complex_.of_dim(dim)
    rows, cols = [], []
    for j, simplex in enumerate(cells):
        for drop in range(len(simplex)):
            rows.append(faces[simplex[:drop] + simplex[drop + 1:]])
            cols.append(j)
    return coo_matrix(
        (np.ones(len(rows), dtype=np.uint8), (rows, cols)),
        shape=(len(faces), len(cells)),
    )


def _boundary_rank(complex_: SimplicialComplex, dim: int) -> int:
    if dim <= 0 or not complex_.of_dim(dim) or not complex_.of_dim(dim - 1):
        return 0
    return gf2_rank(boundary_matrix(complex_, dim).toarray())


def betti(complex_: SimplicialComplex, max_dim: int | None = None) -> tuple[int, ...]:
    """
    (b_0, ..., b_max_dim) over the two-element field; b_i needs the
    (i+1)-simplices, so ``max_dim`` must stay below the complex's dim_cap.
    """
    if max_dim is None:
        max_dim = complex_.dim_cap - 1
    if max_dim >= complex_.dim_cap:
        raise InsufficientDimCapError(
            f"b_{max_dim} needs simplices of dimension {max_dim + 1}; complex stops at {complex_.dim_cap}"
        )
    ranks = [_boundary_rank(complex_, d) for d in range(max_dim + 2)]
    return tuple(
        len(complex_.of_dim(d)) - ranks[d] - ranks[d + 1]
        for d in range(max_dim + 1)
    )
