"""
Relative ranks and the neighborhoods and rank sequences built from them.

Under the CHECK variant q(x, y) counts the points strictly nearer to x than y,
so q(x, x) = 0 and rank sequences are indexed by k = 0 .. N-1. Under HAT
q(x, y) counts the points at least as near, so q(x, x) is the size of the
co-location class of x and sequences are indexed by k = 1 .. N.
"""
from collections.abc import Sequence

import numpy as np

from lastfirst.core.utils import ConfigError, LengthMismatchError
from lastfirst.schema import Direction, RankVariant
from lastfirst.space.dissimilarity import DissimilaritySpace


def rank_row(space: DissimilaritySpace, x: int, variant: RankVariant = RankVariant.CHECK) -> np.ndarray:
    return space.rank_row(x, variant)


def rank_matrix(space: DissimilaritySpace, variant: RankVariant = RankVariant.CHECK) -> np.ndarray:
    """All out-rank rows stacked; row x holds q(x, .)."""
    return np.vstack([space.rank_row(x, variant) for x in range(space.size)])


def out_rank(space: DissimilaritySpace, variant: RankVariant, x: int, y: int) -> int:
    space.check_index(y)
    return int(space.rank_row(x, variant)[y])


def in_rank(space: DissimilaritySpace, variant: RankVariant, x: int, y: int) -> int:
    return out_rank(space, variant, y, x)


def _directed_ranks(space: DissimilaritySpace, variant: RankVariant, direction: Direction, x: int) -> np.ndarray:
    space.check_index(x)
    if Direction(direction) == Direction.OUT:
        return space.rank_row(x, variant)
    return np.array([space.rank_row(y, variant)[x] for y in range(space.size)], dtype=np.int64)


def k_neighborhood(
    space: DissimilaritySpace,
    variant: RankVariant,
    direction: Direction,
    x: int,
    k: int,
) -> np.ndarray:
    """N_k^+(x) = {y : q(x, y) <= k} or N_k^-(x) = {y : q(y, x) <= k}, as sorted indices."""
    if k < 0:
        raise ConfigError(f"rank bound k must be nonnegative, got {k}", {"k": int(k)})
    return np.flatnonzero(_directed_ranks(space, variant, direction, x) <= k)


def rank_sequence_bounds(space: DissimilaritySpace, variant: RankVariant) -> np.ndarray:
    if RankVariant(variant) == RankVariant.HAT:
        return np.arange(1, space.size + 1)
    return np.arange(space.size)


def rank_sequence(
    space: DissimilaritySpace,
    variant: RankVariant,
    direction: Direction,
    x: int,
    restrict: Sequence[int] | np.ndarray | None = None,
) -> np.ndarray:
    """(|N_k(x, Y)|)_k over the rank bounds of ``variant``, with Y = ``restrict`` or all of X."""
    ranks = _directed_ranks(space, variant, direction, x)
    if restrict is not None:
        idx = np.asarray(restrict, dtype=int)
        for i in idx:
            space.check_index(int(i))
        ranks = ranks[idx]
    return np.searchsorted(np.sort(ranks), rank_sequence_bounds(space, variant), side="right")


def revlex_compare(a: Sequence[int] | np.ndarray, b: Sequence[int] | np.ndarray) -> int:
    """
    -1 if a < b, 0 if equal, 1 if a > b in reverse lexicographic order, where
    a < b when a is larger at the first position the two differ.
    """
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise LengthMismatchError(f"cannot compare sequences of lengths {a.size} and {b.size}")
    diff = np.flatnonzero(a != b)
    if diff.size == 0:
        return 0
    return -1 if a[diff[0]] > b[diff[0]] else 1


def revlex_key(seq: Sequence[int] | np.ndarray) -> tuple[int, ...]:
    """Sort key realizing the revlex order under Python's tuple comparison."""
    return tuple(-int(v) for v in seq)
