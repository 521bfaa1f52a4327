"""
Samples from the unit 2-sphere, uniform or skewed toward the south pole.

The skew is expressed through the polar angle phi in [0, pi] measured from
the north pole (0, 0, 1). Skewed sampling rejects a uniform draw when
(phi / pi) ** alpha falls below a uniform threshold; boosting draws a pool a
sixth the size of the sample and resamples it with replacement with mass
proportional to (phi / pi) ** beta.
"""
import logging
import math

import numpy as np

from lastfirst.core.rng import make_rng
from lastfirst.schema import SphereMode, SphereSampleParams

logger = logging.getLogger(__name__)


def polar_angle(points: np.ndarray) -> np.ndarray:
    return np.arccos(np.clip(np.asarray(points, dtype=float)[:, 2], -1.0, 1.0))


def _uniform(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.standard_normal(size=(n, 3))
    norms = np.linalg.norm(v, axis=1, keepdims=True)
    # a zero draw has probability 0 but would produce NaN
    while (bad := norms[:, 0] == 0).any():
        v[bad] = rng.standard_normal(size=(int(bad.sum()), 3))
        norms = np.linalg.norm(v, axis=1, keepdims=True)
    return v / norms


def _skewed(rng: np.random.Generator, n: int, alpha: float) -> np.ndarray:
    accepted: list[np.ndarray] = []
    total = 0
    draws = 0
    while total < n:
        batch = _uniform(rng, max(2 * (n - total), 16))
        keep = (polar_angle(batch) / math.pi) ** alpha >= rng.uniform(size=batch.shape[0])
        accepted.append(batch[keep])
        total += int(keep.sum())
        draws += batch.shape[0]
    logger.debug(f"Skewed sphere sample: accepted {total} of {draws} proposals")
    return np.vstack(accepted)[:n]


def gen_sphere(params: SphereSampleParams) -> np.ndarray:
    rng = make_rng(params.rng_seed)
    boosted = params.mode in (SphereMode.UNIFORM_BOOSTED, SphereMode.SKEWED_BOOSTED)
    size = max(1, math.ceil(params.n * params.boost_pool_fraction)) if boosted else params.n

    if params.mode in (SphereMode.SKEWED, SphereMode.SKEWED_BOOSTED):
        pool = _skewed(rng, size, params.alpha)
    else:
        pool = _uniform(rng, size)
    if not boosted:
        return pool

    mass = (polar_angle(pool) / math.pi) ** params.beta
    if mass.sum() <= 0:
        mass = np.ones(size)
    picks = rng.choice(size, size=params.n, replace=True, p=mass / mass.sum())
    return pool[picks]
