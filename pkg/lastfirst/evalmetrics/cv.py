import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
import pandas as pd

from lastfirst.complex import cover_kind_for, nerve
from lastfirst.core.pool import run_pool
from lastfirst.core.rng import make_rng, spawn_seeds
from lastfirst.core.settings import settings
from lastfirst.core.utils import (
    DegenerateFoldError,
    DegenerateLabelsError,
    LengthMismatchError,
    SinglePeriodError,
)
from lastfirst.evalmetrics.auroc import auroc, auroc_columns
from lastfirst.evalmetrics.cover_quality import cover_risk_scores, mpc
from lastfirst.evalmetrics.inn import inn_predict_table, knn_profile
from lastfirst.landmark import build_cover, sample_landmarks
from lastfirst.schema import CvPlan, SamplerConfig, WeightingScheme, WeightKind
from lastfirst.space import DissimilaritySpace

logger = logging.getLogger(__name__)

NESTED_COLUMNS = ["procedure", "n_landmarks", "scheme", "k", "fold_outer", "fold_inner", "auroc"]
TEMPORAL_COLUMNS = ["procedure", "n_landmarks", "period", "part", "auroc"]
COVER_COLUMNS = ["procedure", "n_landmarks", "ext_mult", "simplices_1", "simplices_2", "mpc", "auroc"]

# observer(stage, indices, fold_outer, fold_inner) with stage in {"train", "landmarks", "tune", "evaluate"}
CvObserver = Callable[[str, np.ndarray, int, int], None]


def fold_indices(
    indices: Sequence[int] | np.ndarray,
    folds: int,
    rng: np.random.Generator,
    labels: np.ndarray | None = None,
) -> list[np.ndarray]:
    """
    Shuffle, then cut into ``folds`` contiguous parts whose sizes differ by at
    most one. With ``labels`` (indexed by point) each class is shuffled on its
    own and dealt out in turn, so every fold sees every class that has at least
    ``folds`` members.
    """
    indices = np.asarray(indices, dtype=int)
    if labels is None:
        return [np.sort(part) for part in np.array_split(rng.permutation(indices), folds)]
    classes = np.unique(labels[indices])
    dealt = np.concatenate([rng.permutation(indices[labels[indices] == c]) for c in classes])
    return [np.sort(dealt[f::folds]) for f in range(folds)]


def _check_fold(y: np.ndarray, fold: np.ndarray, label: str) -> None:
    classes = np.unique(y[fold])
    if fold.size == 0 or classes.size < 2:
        raise DegenerateFoldError(
            f"{label} has {fold.size} points and {classes.size} outcome class(es)",
            {"fold": label, "size": int(fold.size)},
        )


def _neighborhood_size(train: np.ndarray, neighborhood_size: int | None) -> int:
    return min(neighborhood_size or settings.NEIGHBORHOOD_SIZE, train.size)


def _sample_from(space: DissimilaritySpace, train: np.ndarray, config: SamplerConfig) -> np.ndarray:
    """Landmarks drawn from the training points only, returned as indices of the full space."""
    result = sample_landmarks(space.subspace(train), config)
    return train[np.asarray(result.landmarks, dtype=int)]


def _tune(
    space: DissimilaritySpace,
    val: np.ndarray,
    y: np.ndarray,
    landmarks: np.ndarray,
    profile: np.ndarray,
    schemes: Sequence[WeightingScheme],
) -> tuple[WeightingScheme, int, float]:
    """Scheme and k with the best validation AUROC; earlier schemes and smaller k win ties."""
    best: tuple[WeightingScheme, int, float] | None = None
    for scheme in schemes:
        scores = auroc_columns(inn_predict_table(space, val, landmarks, profile, scheme), y[val])
        k = int(np.argmax(scores))
        if best is None or scores[k] > best[2]:
            best = (scheme, k + 1, float(scores[k]))
    return best


def scheme_label(scheme: WeightingScheme) -> str:
    if scheme.bandwidth is None:
        return str(scheme.kind)
    return f"{scheme.kind}:{scheme.bandwidth:g}"


@dataclass(frozen=True)
class _NestedTask:
    space: DissimilaritySpace
    y: np.ndarray
    config: SamplerConfig
    counts: tuple[int, ...]
    schemes: tuple[WeightingScheme, ...]
    neighborhood_size: int | None
    include_knn: bool
    outer: int
    inner: int
    train: np.ndarray
    val: np.ndarray
    test: np.ndarray
    rng_seed: int


def _nested_fold(task: _NestedTask, observer: CvObserver | None = None) -> list[dict]:
    space, y = task.space, task.y
    size = _neighborhood_size(task.train, task.neighborhood_size)
    rows = []
    for count in task.counts:
        config = task.config.model_copy(
            update={"num_landmarks": count, "radius": None, "cardinality": None, "rng_seed": task.rng_seed}
        )
        if observer:
            observer("train", task.train, task.outer, task.inner)
        landmarks = _sample_from(space, task.train, config)
        if observer:
            observer("landmarks", landmarks, task.outer, task.inner)
        profile = knn_profile(space, landmarks, task.train, y, size)
        if observer:
            observer("tune", task.val, task.outer, task.inner)
        scheme, k, _ = _tune(space, task.val, y, landmarks, profile, task.schemes)
        if observer:
            observer("evaluate", task.test, task.outer, task.inner)
        scores = inn_predict_table(space, task.test, landmarks, profile[:, [k - 1]], scheme)[:, 0]
        rows.append({
            "procedure": str(task.config.procedure),
            "n_landmarks": len(landmarks),
            "scheme": scheme_label(scheme),
            "k": k,
            "fold_outer": task.outer,
            "fold_inner": task.inner,
            "auroc": auroc(scores, y[task.test]),
        })
    if task.include_knn:
        val_table = knn_profile(space, task.val, task.train, y, size)
        k = int(np.argmax(auroc_columns(val_table, y[task.val]))) + 1
        scores = knn_profile(space, task.test, task.train, y, k)[:, k - 1]
        rows.append({
            "procedure": "knn",
            "n_landmarks": 0,
            "scheme": "none",
            "k": k,
            "fold_outer": task.outer,
            "fold_inner": task.inner,
            "auroc": auroc(scores, y[task.test]),
        })
    return rows


def _nested_fold_unobserved(task: _NestedTask) -> list[dict]:
    return _nested_fold(task)


def nested_cv(
    space: DissimilaritySpace,
    outcomes: np.ndarray,
    config: SamplerConfig,
    plan: CvPlan,
    landmark_counts: Sequence[int],
    schemes: Sequence[WeightingScheme] | None = None,
    neighborhood_size: int | None = None,
    include_knn: bool = False,
    observer: CvObserver | None = None,
    workers: int | None = None,
) -> pd.DataFrame:
    """
    Train-tune-test cross-validation. For every outer fold (test) and every
    inner fold of the remaining points (validation), landmarks and their
    neighbor profiles come from the rest, the weighting scheme and k are chosen
    by validation AUROC, and the chosen model is scored on the test fold.
    """
    y = np.asarray(outcomes).astype(int)
    if y.shape != (space.size,):
        raise LengthMismatchError(f"{y.size} outcomes for a space of {space.size} points")
    schemes = tuple(schemes or [WeightingScheme(kind=kind) for kind in WeightKind])
    rng = make_rng(plan.rng_seed)
    seeds = iter(spawn_seeds(config.rng_seed, plan.outer_folds * plan.inner_folds))
    tasks = []
    for i, test in enumerate(fold_indices(np.arange(space.size), plan.outer_folds, rng, y)):
        _check_fold(y, test, f"outer fold {i}")
        rest = np.setdiff1d(np.arange(space.size), test)
        for j, val in enumerate(fold_indices(rest, plan.inner_folds, rng, y)):
            _check_fold(y, val, f"inner fold {i}.{j}")
            tasks.append(_NestedTask(
                space=space,
                y=y,
                config=config,
                counts=tuple(landmark_counts),
                schemes=schemes,
                neighborhood_size=neighborhood_size,
                include_knn=include_knn,
                outer=i,
                inner=j,
                train=np.setdiff1d(rest, val),
                val=val,
                test=test,
                rng_seed=next(seeds),
            ))
    logger.info(f"Nested CV: {len(tasks)} folds x {len(landmark_counts)} landmark counts ({config.procedure})")
    if observer is not None:
        blocks = [_nested_fold(task, observer) for task in tasks]
    else:
        blocks = run_pool(_nested_fold_unobserved, tasks, workers=workers, progress="folds")
    return pd.DataFrame([row for block in blocks for row in block], columns=NESTED_COLUMNS)


def temporal_cv(
    space: DissimilaritySpace,
    outcomes: np.ndarray,
    periods: Sequence[str],
    config: SamplerConfig,
    plan: CvPlan,
    landmark_counts: Sequence[int],
    neighborhood_size: int | None = None,
    bandwidth: float | None = None,
) -> pd.DataFrame:
    """
    Rolling evaluation over ordered periods: models are built on period t-1,
    and period t is cut into random parts, each scored with the k that does
    best on the other parts. Only Gaussian weighting is used.
    """
    y = np.asarray(outcomes).astype(int)
    labels = np.asarray(periods).astype(str)
    if y.shape != (space.size,) or labels.shape != (space.size,):
        raise LengthMismatchError("outcomes and periods must have one entry per point")
    windows = list(plan.window_keys) if plan.window_keys else sorted(set(labels.tolist()))
    if len(windows) < 2:
        raise SinglePeriodError("temporal evaluation needs at least two periods")
    scheme = WeightingScheme(kind=WeightKind.GAUSSIAN, bandwidth=bandwidth)
    rng = make_rng(plan.rng_seed)
    seeds = iter(spawn_seeds(config.rng_seed, len(windows) - 1))
    rows = []
    for previous, current in zip(windows, windows[1:]):
        train = np.flatnonzero(labels == previous)
        target = np.flatnonzero(labels == current)
        _check_fold(y, train, f"period {previous}")
        _check_fold(y, target, f"period {current}")
        parts = fold_indices(target, plan.parts, rng, y)
        size = _neighborhood_size(train, neighborhood_size)
        seed = next(seeds)
        for count in landmark_counts:
            run = config.model_copy(
                update={"num_landmarks": count, "radius": None, "cardinality": None, "rng_seed": seed}
            )
            landmarks = _sample_from(space, train, run)
            profile = knn_profile(space, landmarks, train, y, size)
            table = inn_predict_table(space, target, landmarks, profile, scheme)
            position = {int(x): r for r, x in enumerate(target)}
            for p, part in enumerate(parts):
                held = np.setdiff1d(target, part)
                _check_fold(y, part, f"period {current} part {p}")
                _check_fold(y, held, f"period {current} without part {p}")
                held_rows = [position[int(x)] for x in held]
                part_rows = [position[int(x)] for x in part]
                k = int(np.argmax(auroc_columns(table[held_rows], y[held]))) + 1
                rows.append({
                    "procedure": str(config.procedure),
                    "n_landmarks": len(landmarks),
                    "period": current,
                    "part": p,
                    "auroc": auroc(table[part_rows, k - 1], y[part]),
                })
        logger.info(f"Temporal CV: period {current} trained on {previous}")
    return pd.DataFrame(rows, columns=TEMPORAL_COLUMNS)


def cover_evaluation(
    space: DissimilaritySpace,
    outcomes: np.ndarray,
    config: SamplerConfig,
    landmark_counts: Sequence[int],
    ext_mults: Sequence[float] = (0.0,),
    ext_add: float = 0.0,
) -> pd.DataFrame:
    """
    Nerve size, partition coefficient and cover-risk AUROC of the landmark
    covers for each landmark count and multiplicative extension.
    """
    y = np.asarray(outcomes).astype(int)
    if y.shape != (space.size,):
        raise LengthMismatchError(f"{y.size} outcomes for a space of {space.size} points")
    kind = cover_kind_for(config.procedure)
    rows = []
    for count in landmark_counts:
        result = sample_landmarks(
            space, config.model_copy(update={"num_landmarks": count, "radius": None, "cardinality": None})
        )
        for mult in ext_mults:
            cover = build_cover(space, result, kind, mult, ext_add)
            f = nerve(cover, dim_cap=2).f_vector()
            try:
                risk_auroc = auroc(cover_risk_scores(cover, y), y)
            except DegenerateLabelsError:
                risk_auroc = float("nan")
            rows.append({
                "procedure": str(config.procedure),
                "n_landmarks": len(result.landmarks),
                "ext_mult": mult,
                "simplices_1": f[1],
                "simplices_2": f[2],
                "mpc": mpc(cover),
                "auroc": risk_auroc,
            })
    return pd.DataFrame(rows, columns=COVER_COLUMNS)
