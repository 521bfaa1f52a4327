import logging
from collections.abc import Sequence

import numpy as np

from lastfirst.core.rng import make_rng
from lastfirst.core.utils import EmptyCandidatesError, EmptySpaceError
from lastfirst.landmark.covering import lexmax_columns, lexmin_rows
from lastfirst.schema import Procedure, RankVariant, SeedRule, TieRule
from lastfirst.space import DissimilaritySpace, rank_matrix

logger = logging.getLogger(__name__)


def select(
    rule: TieRule,
    candidates: Sequence[int] | np.ndarray,
    landmarks: Sequence[int],
    space: DissimilaritySpace,
    procedure: Procedure = Procedure.MAXMIN,
    rng: np.random.Generator | int | None = None,
    variant: RankVariant = RankVariant.CHECK,
) -> int:
    """
    Choose the next landmark among tied candidates.

    ITERATIVE_REFINEMENT compares candidates by their distances (maxmin) or
    ranks (lastfirst) from the landmarks, nearest first: the nearest landmark
    decides, ties go to the second nearest, and so on. Candidates still tied
    after every landmark fall back to the smallest index.
    """
    pool = np.unique(np.asarray(candidates, dtype=int))
    if pool.size == 0:
        raise EmptyCandidatesError("no candidates to select from")
    if pool.size == 1:
        return int(pool[0])
    match TieRule(rule):
        case TieRule.FIRST_INDEX:
            return int(pool[0])
        case TieRule.RANDOM:
            return int(make_rng(rng).choice(pool))
        case TieRule.ITERATIVE_REFINEMENT:
            if len(landmarks) == 0:
                return int(pool[0])
            if Procedure(procedure) == Procedure.LASTFIRST:
                profiles = np.vstack([space.rank_row(int(ell), variant)[pool] for ell in landmarks])
            else:
                profiles = space.dissim[np.ix_(np.asarray(landmarks, dtype=int), pool)]
            survivors = pool[lexmax_columns(np.sort(profiles, axis=0))]
            if survivors.size > 1:
                logger.debug(f"Refinement left {survivors.size} equivalent candidates; taking {survivors[0]}")
            return int(survivors[0])


def seed(
    space: DissimilaritySpace,
    rule: SeedRule,
    procedure: Procedure = Procedure.MAXMIN,
    rng: np.random.Generator | int | None = None,
    variant: RankVariant = RankVariant.CHECK,
) -> int:
    """
    First landmark. The CHEBYSHEV center minimizes the eccentricity
    max_y d(x, y) for distance-based runs; for lastfirst runs it minimizes the
    out-neighborhood sequence N^+(x, X - {x}) in revlex.
    """
    if space.size == 0:
        raise EmptySpaceError("cannot seed an empty space")
    match SeedRule(rule):
        case SeedRule.FIRST_INDEX:
            return 0
        case SeedRule.RANDOM:
            return int(make_rng(rng).integers(space.size))
        case SeedRule.CHEBYSHEV:
            if space.size == 1:
                return 0
            if Procedure(procedure) == Procedure.LASTFIRST:
                # q(x, x) is the row minimum, so dropping the first sorted entry drops x itself;
                # the revlex-smallest count sequence has the lexicographically smallest sorted ranks
                profiles = np.sort(rank_matrix(space, variant), axis=1)[:, 1:]
                return int(np.flatnonzero(lexmin_rows(profiles))[0])
            return int(np.argmin(space.dissim.max(axis=1)))
