import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from lastfirst.core.utils import EmptyCoverError, InsufficientDimCapError
from lastfirst.landmark import Cover

logger = logging.getLogger(__name__)

Simplex = tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    """Simplices by dimension, each a strictly increasing vertex tuple, up to ``dim_cap``."""

    vertices: int
    simplices: tuple[tuple[Simplex, ...], ...]
    dim_cap: int

    def of_dim(self, dim: int) -> tuple[Simplex, ...]:
        if 0 <= dim < len(self.simplices):
            return self.simplices[dim]
        return ()

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.simplices)

    @property
    def dimension(self) -> int:
        nonempty = [d for d, level in enumerate(self.simplices) if level]
        return nonempty[-1] if nonempty else -1

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * count for d, count in enumerate(self.f_vector()))

    @classmethod
    def from_maximal(cls, maximal: Iterable[Sequence[int]], dim_cap: int) -> "SimplicialComplex":
        """Downward closure of the given simplices, truncated at ``dim_cap``."""
        levels: list[set[Simplex]] = [set() for _ in range(dim_cap + 1)]
        for simplex in maximal:
            vertices = tuple(sorted(set(simplex)))
            for size in range(1, min(len(vertices), dim_cap + 1) + 1):
                levels[size - 1].update(combinations(vertices, size))
        vertex_count = max((v for (v,) in levels[0]), default=-1) + 1
        return cls(
            vertices=vertex_count,
            simplices=tuple(tuple(sorted(level)) for level in levels),
            dim_cap=dim_cap,
        )


def _incidence(cover: Cover | Sequence[Sequence[int]]) -> np.ndarray:
    if isinstance(cover, Cover):
        return cover.incidence()
    sets = [np.asarray(s, dtype=int) for s in cover]
    size = max((int(s.max()) + 1 for s in sets if s.size), default=0)
    incidence = np.zeros((size, len(sets)), dtype=bool)
    for j, members in enumerate(sets):
        incidence[members, j] = True
    return incidence


def nerve(cover: Cover | Sequence[Sequence[int]], dim_cap: int = 2) -> SimplicialComplex:
    """
    Nerve of a cover: a vertex per set and a simplex per family of sets with a
    common point. Higher simplices are grown only from cliques of the overlap
    graph, carrying the common intersection of each simplex along.
    """
    if dim_cap < 1:
        raise InsufficientDimCapError(f"dim_cap must be at least 1, got {dim_cap}")
    incidence = _incidence(cover)
    m = incidence.shape[1]
    if m == 0:
        raise EmptyCoverError("cover has no sets")
    empty = np.flatnonzero(~incidence.any(axis=0))
    if empty.size:
        raise EmptyCoverError(f"cover set {int(empty[0])} is empty", {"sets": empty.tolist()})

    counts = incidence.T.astype(np.int64) @ incidence.astype(np.int64)
    overlap = counts > 0
    level: list[tuple[Simplex, np.ndarray]] = [((j,), incidence[:, j]) for j in range(m)]
    simplices: list[tuple[Simplex, ...]] = [tuple(s for s, _ in level)]
    for _ in range(1, dim_cap + 1):
        grown: list[tuple[Simplex, np.ndarray]] = []
        for simplex, common in level:
            candidates = np.flatnonzero(overlap[list(simplex)].all(axis=0))
            candidates = candidates[candidates > simplex[-1]]
            if candidates.size == 0:
                continue
            shared = common[:, None] & incidence[:, candidates]
            for v, meet in zip(candidates[shared.any(axis=0)], shared.T[shared.any(axis=0)]):
                grown.append((simplex + (int(v),), meet))
        simplices.append(tuple(s for s, _ in grown))
        level = grown
    complex_ = SimplicialComplex(vertices=m, simplices=tuple(simplices), dim_cap=dim_cap)
    logger.debug(f"nerve f-vector {complex_.f_vector()}")
    return complex_
