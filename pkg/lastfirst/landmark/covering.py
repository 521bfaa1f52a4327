"""
Covering parameters of a landmark set and the maxmin and lastfirst sets that
extend it. Balls and neighborhoods grow outward from landmarks: y covers x at
radius e when d(y, x) <= e, and at rank bound k when q(y, x) <= k.
"""
from collections.abc import Sequence

import numpy as np

from lastfirst.core.utils import EmptyInputError
from lastfirst.schema import RankVariant
from lastfirst.space import DissimilaritySpace


def as_index_array(space: DissimilaritySpace, indices: Sequence[int] | np.ndarray) -> np.ndarray:
    idx = np.asarray(indices, dtype=int).reshape(-1)
    for i in idx:
        space.check_index(int(i))
    return idx


def _nonempty(space: DissimilaritySpace, indices: Sequence[int] | np.ndarray) -> np.ndarray:
    idx = as_index_array(space, indices)
    if idx.size == 0:
        raise EmptyInputError("landmark set is empty")
    return idx


def lexmax_columns(profiles: np.ndarray) -> np.ndarray:
    """
    Mask of the columns of ``profiles`` that are lexicographically largest,
    reading each column top to bottom.
    """
    keep = np.ones(profiles.shape[1], dtype=bool)
    for row in profiles:
        keep &= row == row[keep].max()
        if keep.sum() == 1:
            break
    return keep


def lexmin_rows(profiles: np.ndarray) -> np.ndarray:
    keep = np.ones(profiles.shape[0], dtype=bool)
    for column in profiles.T:
        keep &= column == column[keep].min()
        if keep.sum() == 1:
            break
    return keep


def distances_to(space: DissimilaritySpace, landmarks: Sequence[int] | np.ndarray) -> np.ndarray:
    """d(L, x) = min over landmarks of d(l, x), for every x."""
    return space.dissim[_nonempty(space, landmarks)].min(axis=0)


def ranks_to(
    space: DissimilaritySpace,
    landmarks: Sequence[int] | np.ndarray,
    variant: RankVariant = RankVariant.CHECK,
) -> np.ndarray:
    """min over landmarks of q(l, x), for every x."""
    idx = _nonempty(space, landmarks)
    return np.vstack([space.rank_row(int(ell), variant) for ell in idx]).min(axis=0)


def covering_radius(space: DissimilaritySpace, landmarks: Sequence[int] | np.ndarray) -> float:
    return float(distances_to(space, landmarks).max())


def covering_cardinality(
    space: DissimilaritySpace,
    landmarks: Sequence[int] | np.ndarray,
    variant: RankVariant = RankVariant.CHECK,
) -> int:
    return int(ranks_to(space, landmarks, variant).max())


def maxmin_set(space: DissimilaritySpace, landmarks: Sequence[int] | np.ndarray) -> np.ndarray:
    """Points outside cl(Y) farthest from Y; empty once cl(Y) = X."""
    idx = _nonempty(space, landmarks)
    outside = ~space.partition.closure(idx)
    if not outside.any():
        return np.empty(0, dtype=int)
    mins = space.dissim[idx].min(axis=0)
    return np.flatnonzero(outside & (mins == mins[outside].max()))


def lastfirst_set(
    space: DissimilaritySpace,
    landmarks: Sequence[int] | np.ndarray,
    variant: RankVariant = RankVariant.CHECK,
) -> np.ndarray:
    """
    Points outside cl(Y) whose in-neighborhood sequence N^-(x, Y) is largest in
    revlex, found as the lexicographic maximum of their sorted ranks from Y.
    """
    idx = _nonempty(space, landmarks)
    outside = np.flatnonzero(~space.partition.closure(idx))
    if outside.size == 0:
        return outside
    ranks = np.vstack([space.rank_row(int(ell), variant)[outside] for ell in idx])
    return outside[lexmax_columns(np.sort(ranks, axis=0))]
