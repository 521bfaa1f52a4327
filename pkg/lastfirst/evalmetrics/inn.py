"""
Interpolative nearest neighbors: every landmark carries the outcome incidence
of its k nearest training points, and a new point is predicted by the weighted
average of the landmark incidences, weighted by its distance to each landmark.
Distances are read landmark-outward, d(l, x).
"""
from collections.abc import Sequence

import numpy as np
from scipy.stats import rankdata

from lastfirst.core.utils import ConfigError, InsufficientTrainingError, LengthMismatchError, NoLandmarksError
from lastfirst.schema import WeightingScheme, WeightKind
from lastfirst.space import DissimilaritySpace


def knn_profile(
    space: DissimilaritySpace,
    sources: Sequence[int] | np.ndarray,
    train: Sequence[int] | np.ndarray,
    outcomes: np.ndarray,
    neighborhood_size: int,
) -> np.ndarray:
    """
    (len(sources), neighborhood_size) table whose entry [i, k-1] is the mean
    outcome over the training points no farther from source i than its k-th
    nearest one; tied points at the boundary are all included.
    """
    train = np.asarray(train, dtype=int)
    y = np.asarray(outcomes, dtype=float)
    if y.shape != (space.size,):
        raise LengthMismatchError(f"{y.size} outcomes for a space of {space.size} points")
    if neighborhood_size < 1 or train.size < neighborhood_size:
        raise InsufficientTrainingError(
            f"{train.size} training points cannot supply {neighborhood_size} neighbors",
            {"train": int(train.size), "neighborhood_size": neighborhood_size},
        )
    d = space.dissim[np.ix_(np.asarray(sources, dtype=int), train)]
    order = np.argsort(d, axis=1, kind="stable")
    sorted_d = np.take_along_axis(d, order, axis=1)
    running = np.cumsum(y[train][order], axis=1)
    profile = np.empty((d.shape[0], neighborhood_size))
    for i in range(d.shape[0]):
        counts = np.searchsorted(sorted_d[i], sorted_d[i, :neighborhood_size], side="right")
        profile[i] = running[i, counts - 1] / counts
    return profile


def landmark_knn_profile(
    space: DissimilaritySpace,
    landmarks: Sequence[int] | np.ndarray,
    outcomes: np.ndarray,
    neighborhood_size: int,
    train: Sequence[int] | np.ndarray | None = None,
) -> np.ndarray:
    """p(l) for k = 1 .. neighborhood_size, from the ``train`` points (all points by default)."""
    if len(landmarks) == 0:
        raise NoLandmarksError("no landmarks to profile")
    if train is None:
        train = np.arange(space.size)
    return knn_profile(space, landmarks, train, outcomes, neighborhood_size)


def landmark_weights(distances: np.ndarray, scheme: WeightingScheme) -> np.ndarray:
    """
    Weights of landmarks at ``distances`` (the last axis) from each query point.
    Rows whose weights all vanish fall back to equal weights.
    """
    d = np.atleast_2d(np.asarray(distances, dtype=float))
    match scheme.kind:
        case WeightKind.INVERSE_DISTANCE:
            with np.errstate(divide="ignore"):
                w = 1.0 / d
        case WeightKind.TRIANGLE:
            d_max = d.max(axis=1, keepdims=True)
            w = np.clip(1.0 - np.divide(d, d_max, out=np.zeros_like(d), where=d_max > 0), 0.0, None)
        case WeightKind.GAUSSIAN:
            if scheme.bandwidth is not None:
                sigma = np.full((d.shape[0], 1), scheme.bandwidth)
            else:
                sigma = np.median(d, axis=1, keepdims=True)
            sigma = np.where(sigma > 0, sigma, 1.0)
            # shifting by the nearest landmark leaves normalized weights unchanged
            w = np.exp(-(d ** 2 - d.min(axis=1, keepdims=True) ** 2) / (2 * sigma ** 2))
        case WeightKind.RANK:
            w = 1.0 / (1.0 + rankdata(d, method="min", axis=1) - 1)
        case _:
            raise ConfigError(f"unknown weighting {scheme.kind}")
    dead = ~(w > 0).any(axis=1)
    w[dead] = 1.0
    return w


def inn_predict_table(
    space: DissimilaritySpace,
    points: Sequence[int] | np.ndarray,
    landmarks: Sequence[int] | np.ndarray,
    profile: np.ndarray,
    scheme: WeightingScheme,
) -> np.ndarray:
    """Predictions for every query point (rows) and every k of the profile (columns)."""
    landmarks = np.asarray(landmarks, dtype=int)
    if landmarks.size == 0:
        raise NoLandmarksError("prediction needs at least one landmark")
    if profile.shape[0] != landmarks.size:
        raise LengthMismatchError(f"profile has {profile.shape[0]} rows for {landmarks.size} landmarks")
    d = space.dissim[np.ix_(landmarks, np.asarray(points, dtype=int))].T
    colocated = d <= space.colocation_tolerance
    w = landmark_weights(np.where(colocated, 1.0, d), scheme)
    # a point co-located with a landmark takes that landmark's incidence
    hit = colocated.any(axis=1)
    nearest = np.argmin(d, axis=1)
    w[hit] = 0.0
    w[hit, nearest[hit]] = 1.0
    w /= w.sum(axis=1, keepdims=True)
    return w @ profile


def inn_predict(
    test_point: int,
    landmarks: Sequence[int] | np.ndarray,
    profile: np.ndarray,
    k: int,
    scheme: WeightingScheme,
    space: DissimilaritySpace,
) -> float:
    """p_L(x) = sum_l w(d(l, x)) p_k(l) / sum_l w(d(l, x))."""
    if len(landmarks) == 0:
        raise NoLandmarksError("prediction needs at least one landmark")
    space.check_index(test_point)
    if not 1 <= k <= profile.shape[1]:
        raise ConfigError(f"k = {k} outside the profile range 1..{profile.shape[1]}")
    return float(inn_predict_table(space, [test_point], landmarks, profile[:, [k - 1]], scheme)[0, 0])


def knn_predict(
    space: DissimilaritySpace,
    points: Sequence[int] | np.ndarray,
    train: Sequence[int] | np.ndarray,
    outcomes: np.ndarray,
    k: int,
) -> np.ndarray:
    """Plain nearest-neighbor incidence of the k nearest training points of each query point."""
    return knn_profile(space, points, train, outcomes, k)[:, k - 1]
