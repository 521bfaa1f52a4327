"""
Random streams.

All randomness goes through numpy's PCG64 bit generator, which produces the same
stream on every platform for a given seed. Independent streams for replicates,
folds or grid cells are split off a parent seed with ``SeedSequence.spawn`` and
reduced to plain integers, so they can be recorded in run manifests and replayed.
"""
import numpy as np


def make_rng(seed: int | np.random.Generator | None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def spawn_seeds(seed: int, count: int) -> list[int]:
    """Derive ``count`` independent child seeds from ``seed``."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint32)[0]) for child in children]
