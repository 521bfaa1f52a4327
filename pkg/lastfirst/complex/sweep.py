"""
Landmark persistence: nerves of the landmark covers for every prefix length m
of one landmark sequence, and the longest run of m over which the nerve has
the target Betti numbers (the landmark dominance).
"""
import logging
import statistics
from collections.abc import Sequence
from dataclasses import dataclass

from lastfirst.complex.homology import betti
from lastfirst.complex.nerve import nerve
from lastfirst.core.pool import run_pool
from lastfirst.core.rng import spawn_seeds
from lastfirst.core.utils import TooManyRequestedError
from lastfirst.landmark import build_cover, sample_landmarks
from lastfirst.schema import CoverKind, Procedure, SamplerConfig
from lastfirst.space import DissimilaritySpace

logger = logging.getLogger(__name__)

BettiVector = tuple[int, ...]

SWEEP_BETA_COLUMNS = 3


def cover_kind_for(procedure: Procedure) -> CoverKind:
    return CoverKind.NEIGHBORHOOD if procedure == Procedure.LASTFIRST else CoverKind.BALL


def dominance_range(per_m: Sequence[tuple[int, BettiVector]], target: BettiVector) -> tuple[int, int] | None:
    """Longest run of consecutive m whose leading Betti numbers equal ``target``; the earliest on ties."""
    best: tuple[int, int] | None = None
    start = None
    for m, values in per_m:
        if tuple(values[: len(target)]) != tuple(target):
            start = None
            continue
        if start is None:
            start = m
        if best is None or m - start > best[1] - best[0]:
            best = (start, m)
    return best


@dataclass(frozen=True)
class ReplicateSweep:
    replicate: int
    rng_seed: int
    landmarks: tuple[int, ...]
    per_m: tuple[tuple[int, BettiVector], ...]
    params: tuple[float, ...]
    dominance_range: tuple[int, int] | None

    @property
    def dominance(self) -> int:
        if self.dominance_range is None:
            return 0
        return self.dominance_range[1] - self.dominance_range[0] + 1


@dataclass(frozen=True)
class PersistenceSweep:
    procedure: Procedure
    target: BettiVector
    ext_mult: float
    ext_add: float
    replicates: tuple[ReplicateSweep, ...]

    @property
    def per_m(self) -> tuple[tuple[int, BettiVector], ...]:
        return self.replicates[0].per_m

    @property
    def dominance_range(self) -> tuple[int, int] | None:
        return self.replicates[0].dominance_range

    @property
    def median_dominance(self) -> float:
        return float(statistics.median(r.dominance for r in self.replicates))

    @property
    def detection_rate(self) -> float:
        return sum(r.dominance > 0 for r in self.replicates) / len(self.replicates)

    def rows(self) -> list[dict]:
        beta_width = max(SWEEP_BETA_COLUMNS, *(len(values) for r in self.replicates for _, values in r.per_m))
        rows = []
        for r in self.replicates:
            for (m, values), param in zip(r.per_m, r.params):
                row = {"m": m}
                row.update({f"beta{i}": (values[i] if i < len(values) else None) for i in range(beta_width)})
                row.update({
                    "covered": True,
                    "param": param,
                    "procedure": str(self.procedure),
                    "ext_mult": self.ext_mult,
                    "ext_add": self.ext_add,
                    "replicate": r.replicate,
                })
                rows.append(row)
        return rows


def _sweep_replicate(task: tuple) -> ReplicateSweep:
    space, config, target, m_max, ext_mult, ext_add, dim_cap, replicate, seed = task
    run = config.model_copy(update={"rng_seed": seed, "num_landmarks": m_max, "radius": None, "cardinality": None})
    result = sample_landmarks(space, run)
    kind = cover_kind_for(config.procedure)
    per_m, params = [], []
    for m in range(1, len(result.landmarks) + 1):
        cover = build_cover(space, result.prefix(m), kind, ext_mult, ext_add)
        per_m.append((m, betti(nerve(cover, dim_cap))))
        params.append(cover.param)
    span = dominance_range(per_m, target)
    logger.debug(f"replicate {replicate}: {config.procedure} dominance {span}")
    return ReplicateSweep(
        replicate=replicate,
        rng_seed=seed,
        landmarks=tuple(result.landmarks),
        per_m=tuple(per_m),
        params=tuple(params),
        dominance_range=span,
    )


def landmark_persistence_sweep(
    space: DissimilaritySpace,
    config: SamplerConfig,
    target: BettiVector,
    m_max: int,
    replicates: int = 1,
    ext_mult: float = 0.0,
    ext_add: float = 0.0,
    dim_cap: int | None = None,
    workers: int | None = None,
) -> PersistenceSweep:
    """
    Sample ``m_max`` landmarks once per replicate (each replicate with its own
    seed split from ``config.rng_seed``), cover X with every prefix at the
    prefix's own least covering parameter, extended afterwards, and record the
    Betti numbers of each nerve.
    """
    if m_max > space.partition.uniq:
        raise TooManyRequestedError(
            f"m_max {m_max} exceeds the {space.partition.uniq} distinguishable points",
            {"requested": m_max, "available": space.partition.uniq},
        )
    # b_i of the target needs simplices up to dimension len(target)
    dim_cap = dim_cap or len(target)
    seeds = spawn_seeds(config.rng_seed, replicates)
    tasks = [
        (space, config, tuple(target), m_max, ext_mult, ext_add, dim_cap, r, s)
        for r, s in enumerate(seeds)
    ]
    results = run_pool(_sweep_replicate, tasks, workers=workers)
    return PersistenceSweep(
        procedure=config.procedure,
        target=tuple(target),
        ext_mult=ext_mult,
        ext_add=ext_add,
        replicates=tuple(results),
    )
