"""
Planar generators: the bumpy circle, the noisy circle and the necklace.
"""
import logging
import math

import numpy as np

from lastfirst.core.rng import make_rng
from lastfirst.core.utils import InvalidGeometryError, InvalidWeightsError
from lastfirst.schema import BumpyCircleParams, NecklaceParams

logger = logging.getLogger(__name__)

TAU = 2 * math.pi


def _on_circle(theta: np.ndarray, center: tuple[float, float] = (0.0, 0.0), radius: float = 1.0) -> np.ndarray:
    return np.column_stack((center[0] + radius * np.cos(theta), center[1] + radius * np.sin(theta)))


def gen_bumpy_circle(params: BumpyCircleParams) -> np.ndarray:
    """
    Sample ``params.n`` points from the unit circle under a mixture of the
    uniform angle (weight w0) and two Gaussians N(0, sigma) and N(mu2, sigma)
    taken modulo 2 pi (weights w1, w2 with w1 / w2 = ratio).
    """
    if not 0.0 <= params.w0 <= 1.0:
        raise InvalidWeightsError(f"uniform weight {params.w0} outside [0, 1]", {"w0": params.w0})
    if params.ratio <= 0:
        raise InvalidWeightsError(f"Gaussian weight ratio must be positive, got {params.ratio}")
    if params.sigma <= 0:
        raise InvalidWeightsError(f"Gaussian sd must be positive, got {params.sigma}")

    rng = make_rng(params.rng_seed)
    component = rng.choice(3, size=params.n, p=[params.w0, params.w1, params.w2])
    uniform = rng.uniform(0.0, TAU, size=params.n)
    gaussian = rng.normal(0.0, params.sigma, size=params.n)
    theta = np.select([component == 0, component == 1], [uniform, gaussian], default=gaussian + params.mu2)
    logger.debug(f"Bumpy circle: {np.bincount(component, minlength=3).tolist()} points per component")
    return _on_circle(np.mod(theta, TAU))


def gen_noisy_circle(n: int, noise_sd: float, rng_seed: int = 0) -> np.ndarray:
    """Uniform samples from the unit circle plus isotropic Gaussian noise of sd ``noise_sd``."""
    if n < 1:
        raise InvalidGeometryError(f"sample size must be positive, got {n}")
    if noise_sd < 0:
        raise InvalidGeometryError(f"noise sd must be non-negative, got {noise_sd}")
    rng = make_rng(rng_seed)
    points = _on_circle(rng.uniform(0.0, TAU, size=n))
    noise = rng.normal(0.0, noise_sd, size=(n, 2)) if noise_sd > 0 else 0.0
    return points + noise


def bead_centers(params: NecklaceParams) -> np.ndarray:
    """Centers of the beads, evenly spaced along the string starting at angle 0."""
    angles = TAU * np.arange(params.bead_count) / max(params.bead_count, 1)
    return _on_circle(angles, radius=params.string_radius)


def gen_necklace(params: NecklaceParams) -> np.ndarray:
    """
    A sparse sample from a large circle (the string) followed by denser
    samples from ``bead_count`` small circles centered along it.
    """
    if params.bead_count < 0:
        raise InvalidGeometryError(f"bead count must be non-negative, got {params.bead_count}")
    if params.string_radius <= 0 or params.bead_radius <= 0:
        raise InvalidGeometryError(
            "radii must be positive",
            {"string_radius": params.string_radius, "bead_radius": params.bead_radius},
        )

    rng = make_rng(params.rng_seed)
    parts = [_on_circle(rng.uniform(0.0, TAU, size=params.n_string), radius=params.string_radius)]
    for cx, cy in bead_centers(params):
        theta = rng.uniform(0.0, TAU, size=params.n_beads)
        parts.append(_on_circle(theta, center=(cx, cy), radius=params.bead_radius))
    return np.vstack(parts)
