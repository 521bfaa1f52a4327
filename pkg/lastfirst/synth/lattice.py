import numpy as np

from lastfirst.core.rng import make_rng
from lastfirst.core.utils import InvalidGeometryError

LATTICE_SHAPE = (24, 12)


def lattice_pmf() -> np.ndarray:
    """Normalized mass p(a, b) proportional to 2 ** -(a b) on [0, 23] x [0, 11], indexed [a, b]."""
    a, b = np.indices(LATTICE_SHAPE)
    mass = np.exp2(-(a * b).astype(float))
    return mass / mass.sum()


def gen_duplicated_lattice(n: int, rng_seed: int = 0) -> np.ndarray:
    """
    ``n`` i.i.d. integer points from the lattice mass; most draws land on the
    axes, so the sample is heavy with duplicates.
    """
    if n < 1:
        raise InvalidGeometryError(f"sample size must be positive, got {n}")
    rng = make_rng(rng_seed)
    cells = rng.choice(np.prod(LATTICE_SHAPE), size=n, p=lattice_pmf().ravel())
    return np.column_stack(np.unravel_index(cells, LATTICE_SHAPE)).astype(int)
