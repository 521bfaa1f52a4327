import logging
import math

import numpy as np

from lastfirst.core.rng import make_rng
from lastfirst.core.utils import ConfigError, TooManyRequestedError
from lastfirst.landmark.covering import lexmax_columns
from lastfirst.landmark.selection import seed, select
from lastfirst.schema import LandmarkResult, LandmarkStep, Procedure, SamplerConfig
from lastfirst.space import DissimilaritySpace

logger = logging.getLogger(__name__)


def _require(config: SamplerConfig, procedure: Procedure) -> None:
    if config.procedure != procedure:
        raise ConfigError(f"config is for {config.procedure}, not {procedure}")


def maxmin_landmarks(space: DissimilaritySpace, config: SamplerConfig) -> LandmarkResult:
    """
    Greedy maxmin sequence: each new landmark is a point outside the closure of
    the current landmarks at maximal distance from them. Stops once at least
    ``num_landmarks`` are chosen and the covering radius is within ``radius``,
    or when every point is co-located with a landmark.
    """
    _require(config, Procedure.MAXMIN)
    n = config.num_landmarks if config.num_landmarks is not None else 1
    eps = config.radius if config.radius is not None else math.inf
    rng = make_rng(config.rng_seed)
    class_of = space.partition.class_of

    current = seed(space, config.seed_rule, Procedure.MAXMIN, rng)
    landmarks: list[int] = []
    steps: list[LandmarkStep] = []
    covered = np.zeros(space.size, dtype=bool)
    mins = np.full(space.size, np.inf)
    while True:
        landmarks.append(current)
        covered |= class_of == class_of[current]
        mins = np.minimum(mins, space.dissim[current])
        radius = float(mins.max())
        steps.append(LandmarkStep(landmark=current, cover_param=radius))
        logger.debug(f"maxmin landmark {len(landmarks)}: {current} (radius {radius})")
        if covered.all() or (len(landmarks) >= n and radius <= eps):
            break
        outside = ~covered
        candidates = np.flatnonzero(outside & (mins == mins[outside].max()))
        current = select(config.tie_rule, candidates, landmarks, space, Procedure.MAXMIN, rng)

    return LandmarkResult(
        procedure=Procedure.MAXMIN,
        space_size=space.size,
        landmarks=landmarks,
        per_step=steps,
        final_radius=steps[-1].cover_param,
    )


def maxmin_landmarks_balls(space: DissimilaritySpace, config: SamplerConfig) -> LandmarkResult:
    """
    Maxmin stated with balls: at each step find the least radius whose closed
    balls about the landmarks cover X, then draw the next landmark from the points
    the open balls of that radius miss.
    """
    _require(config, Procedure.MAXMIN)
    n = config.num_landmarks if config.num_landmarks is not None else 1
    eps = config.radius if config.radius is not None else math.inf
    rng = make_rng(config.rng_seed)
    partition = space.partition
    # candidate radii: every realized distance, ascending
    radii = np.unique(space.dissim)

    def least_radius(rows: np.ndarray, targets: np.ndarray) -> float:
        lo, hi = 0, radii.size - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if (rows[:, targets] <= radii[mid]).any(axis=0).all():
                hi = mid
            else:
                lo = mid + 1
        return float(radii[lo])

    landmarks = [seed(space, config.seed_rule, Procedure.MAXMIN, rng)]
    steps: list[LandmarkStep] = []
    while True:
        rows = space.dissim[landmarks]
        eps_min = least_radius(rows, np.ones(space.size, dtype=bool))
        steps.append(LandmarkStep(landmark=landmarks[-1], cover_param=eps_min))
        closure = partition.closure(landmarks)
        if closure.all() or (len(landmarks) >= n and eps_min <= eps):
            break
        # balls about L are measured against the points still distinguishable from L
        outside = ~closure
        missed = ~(rows < least_radius(rows, outside)).any(axis=0) & outside
        landmarks.append(select(config.tie_rule, np.flatnonzero(missed), landmarks, space, Procedure.MAXMIN, rng))

    return LandmarkResult(
        procedure=Procedure.MAXMIN,
        space_size=space.size,
        landmarks=landmarks,
        per_step=steps,
        final_radius=steps[-1].cover_param,
    )


def lastfirst_landmarks(space: DissimilaritySpace, config: SamplerConfig) -> LandmarkResult:
    """
    Lastfirst sequence from a seed point.

    Keeps, for every point, the ranks q(l, x) from the landmarks chosen so far.
    The next landmark is taken from the points outside the closure whose sorted
    rank vectors are lexicographically largest, which are the points whose
    in-neighborhood sequences from the landmarks are largest in revlex. Only
    the running minimum is needed until candidates tie on it.
    """
    _require(config, Procedure.LASTFIRST)
    n = config.num_landmarks if config.num_landmarks is not None else 0
    k = config.cardinality if config.cardinality is not None else math.inf
    variant = config.rank_variant
    rng = make_rng(config.rng_seed)
    class_of = space.partition.class_of

    current = seed(space, config.seed_rule, Procedure.LASTFIRST, rng, variant)
    landmarks: list[int] = []
    # rows[i] holds q(landmarks[i], .); capacity doubles as landmarks are added
    rows = np.empty((max(min(n, space.size), 1), space.size), dtype=np.int64)
    steps: list[LandmarkStep] = []
    covered = np.zeros(space.size, dtype=bool)
    min_rank = np.full(space.size, np.iinfo(np.int64).max, dtype=np.int64)
    while True:
        landmarks.append(current)
        covered |= class_of == class_of[current]
        row = space.rank_row(current, variant)
        if len(landmarks) > rows.shape[0]:
            rows = np.vstack([rows, np.empty_like(rows)])
        rows[len(landmarks) - 1] = row
        min_rank = np.minimum(min_rank, row)
        k_min = int(min_rank.max())
        steps.append(LandmarkStep(landmark=current, cover_param=k_min))
        logger.debug(f"lastfirst landmark {len(landmarks)}: {current} (cardinality {k_min})")
        if covered.all() or (len(landmarks) >= n and k_min <= k):
            break
        outside = ~covered
        candidates = np.flatnonzero(outside & (min_rank == min_rank[outside].max()))
        if candidates.size > 1:
            profiles = np.sort(rows[: len(landmarks), candidates], axis=0)
            candidates = candidates[lexmax_columns(profiles)]
        current = select(config.tie_rule, candidates, landmarks, space, Procedure.LASTFIRST, rng, variant)

    return LandmarkResult(
        procedure=Procedure.LASTFIRST,
        space_size=space.size,
        landmarks=landmarks,
        per_step=steps,
        final_cardinality=steps[-1].cover_param,
        rank_variant=variant,
    )


def random_landmarks(space: DissimilaritySpace, config: SamplerConfig) -> LandmarkResult:
    """Uniform sample of co-location classes, each represented by its smallest member."""
    _require(config, Procedure.RANDOM)
    partition = space.partition
    if config.num_landmarks > partition.uniq:
        raise TooManyRequestedError(
            f"requested {config.num_landmarks} landmarks from {partition.uniq} distinguishable points",
            {"requested": config.num_landmarks, "available": partition.uniq},
        )
    rng = make_rng(config.rng_seed)
    chosen = rng.choice(partition.uniq, size=config.num_landmarks, replace=False)
    landmarks = [int(i) for i in partition.representatives()[chosen]]
    mins = np.minimum.accumulate(space.dissim[landmarks], axis=0)
    steps = [
        LandmarkStep(landmark=ell, cover_param=float(mins[i].max()))
        for i, ell in enumerate(landmarks)
    ]
    return LandmarkResult(
        procedure=Procedure.RANDOM,
        space_size=space.size,
        landmarks=landmarks,
        per_step=steps,
        final_radius=steps[-1].cover_param,
    )


def sample_landmarks(space: DissimilaritySpace, config: SamplerConfig) -> LandmarkResult:
    match config.procedure:
        case Procedure.MAXMIN:
            return maxmin_landmarks(space, config)
        case Procedure.LASTFIRST:
            return lastfirst_landmarks(space, config)
        case Procedure.RANDOM:
            return random_landmarks(space, config)
