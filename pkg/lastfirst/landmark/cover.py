import logging
import math
from dataclasses import dataclass

import numpy as np

from lastfirst.core.utils import ConfigError, MismatchedSpaceError
from lastfirst.landmark.covering import covering_cardinality, covering_radius
from lastfirst.schema import CoverKind, LandmarkResult, RankVariant
from lastfirst.space import DissimilaritySpace

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Cover:
    """
    Landmark cover of a space: one member set per landmark, and the fuzzy
    membership matrix that splits each point equally among the sets holding it.
    """

    sets: tuple[np.ndarray, ...]
    kind: CoverKind
    ext_mult: float
    ext_add: float
    param: float
    membership: np.ndarray
    landmarks: tuple[int, ...] = ()

    @property
    def num_sets(self) -> int:
        return len(self.sets)

    @property
    def num_points(self) -> int:
        return self.membership.shape[0]

    def incidence(self) -> np.ndarray:
        return self.membership > 0

    def set_lists(self) -> list[list[int]]:
        return [s.tolist() for s in self.sets]

    @classmethod
    def from_sets(
        cls,
        sets: list[list[int]] | tuple[np.ndarray, ...],
        num_points: int,
        kind: CoverKind = CoverKind.BALL,
        ext_mult: float = 0.0,
        ext_add: float = 0.0,
        param: float = math.nan,
        landmarks: tuple[int, ...] = (),
    ) -> "Cover":
        incidence = np.zeros((num_points, len(sets)), dtype=bool)
        for j, members in enumerate(sets):
            incidence[np.asarray(members, dtype=int), j] = True
        counts = incidence.sum(axis=1, keepdims=True)
        if np.any(counts == 0):
            logger.warning(f"{int(np.sum(counts == 0))} points lie in no cover set")
        membership = np.divide(incidence, counts, out=np.zeros(incidence.shape), where=counts > 0)
        return cls(
            sets=tuple(np.flatnonzero(incidence[:, j]) for j in range(len(sets))),
            kind=kind,
            ext_mult=ext_mult,
            ext_add=ext_add,
            param=param,
            membership=membership,
            landmarks=landmarks,
        )


def extended_radius(radius: float, ext_mult: float, ext_add: float) -> float:
    return radius * (1.0 + ext_mult) + ext_add


def extended_cardinality(cardinality: int, ext_mult: float, ext_add: float) -> float:
    return math.ceil(cardinality * (1.0 + ext_mult)) + ext_add


def _check_result(space: DissimilaritySpace, result: LandmarkResult) -> None:
    if result.space_size != space.size or not result.landmarks:
        raise MismatchedSpaceError(
            f"landmarks were sampled from a space of {result.space_size} points, not {space.size}"
        )
    if any(not 0 <= ell < space.size for ell in result.landmarks):
        raise MismatchedSpaceError("landmark index outside the space")


def build_cover(
    space: DissimilaritySpace,
    result: LandmarkResult,
    kind: CoverKind = CoverKind.BALL,
    ext_mult: float = 0.0,
    ext_add: float = 0.0,
    variant: RankVariant | None = None,
) -> Cover:
    """
    Ball cover {x : d(l, x) <= e(1 + a) + b} or neighborhood cover
    {x : q(l, x) <= ceil(k(1 + a)) + b} about the landmarks of ``result``.
    The unextended parameter is the result's final one, or the least one that
    covers when the result does not carry it.
    """
    _check_result(space, result)
    if ext_mult < 0 or ext_add < 0:
        raise ConfigError(
            "extension factors must be nonnegative", {"ext_mult": ext_mult, "ext_add": ext_add}
        )
    landmarks = np.asarray(result.landmarks, dtype=int)
    if CoverKind(kind) == CoverKind.BALL:
        radius = result.final_radius
        if radius is None:
            radius = covering_radius(space, landmarks)
        param = extended_radius(radius, ext_mult, ext_add)
        incidence = space.dissim[landmarks] <= param
    else:
        variant = RankVariant(variant or result.rank_variant)
        cardinality = result.final_cardinality
        if cardinality is None or variant != result.rank_variant:
            cardinality = covering_cardinality(space, landmarks, variant)
        param = extended_cardinality(cardinality, ext_mult, ext_add)
        incidence = np.vstack([space.rank_row(int(ell), variant) for ell in landmarks]) <= param
    cover = Cover.from_sets(
        [np.flatnonzero(row) for row in incidence],
        space.size,
        kind=CoverKind(kind),
        ext_mult=ext_mult,
        ext_add=ext_add,
        param=param,
        landmarks=tuple(int(ell) for ell in landmarks),
    )
    logger.debug(f"{kind} cover with {cover.num_sets} sets at parameter {param}")
    return cover


def landmark_sets(
    space: DissimilaritySpace,
    result: LandmarkResult,
    kind: CoverKind = CoverKind.BALL,
    ext_mult: float = 0.0,
    ext_add: float = 0.0,
    variant: RankVariant | None = None,
) -> list[list[int]]:
    return build_cover(space, result, kind, ext_mult, ext_add, variant).set_lists()
