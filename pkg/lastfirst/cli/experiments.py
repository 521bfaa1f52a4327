"""
Batch experiments behind the ``sweep`` and ``bench`` commands: the bumpy-circle
landmark-persistence grid and the sampler benchmarks.
"""
import itertools
import logging
import time
import tracemalloc
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import pandas as pd

from lastfirst.complex import landmark_persistence_sweep
from lastfirst.core.pool import run_pool
from lastfirst.core.rng import spawn_seeds
from lastfirst.landmark import sample_landmarks
from lastfirst.schema import (
    BumpyCircleParams,
    GeneratorName,
    NecklaceParams,
    Procedure,
    RankVariant,
    SamplerConfig,
    SeedRule,
    SphereSampleParams,
    TieRule,
)
from lastfirst.space import euclidean_space
from lastfirst.synth import gen_bumpy_circle, gen_duplicated_lattice, gen_necklace, gen_noisy_circle, gen_sphere

logger = logging.getLogger(__name__)

NOISY_CIRCLE_SD = 0.1

BUMPY_TARGET = (1, 1)
GRID_KEY = ["n", "w0", "mu2", "sigma", "ratio", "procedure", "ext_mult", "replicate"]
GRID_COLUMNS = GRID_KEY + ["ext_add", "rank_variant", "data_seed", "rng_seed", "dom_start", "dom_end", "dominance"]

BENCH_KEY = ["generator", "n", "procedure", "repeat"]
BENCH_COLUMNS = BENCH_KEY + ["num_landmarks", "seconds", "peak_bytes", "status"]


def generate(generator: GeneratorName, n: int, rng_seed: int, **options) -> np.ndarray:
    """Sample a point cloud; ``options`` holds the generator's own parameters, unset ones as None."""
    given = {k: v for k, v in options.items() if v is not None}
    match generator:
        case GeneratorName.BUMPY_CIRCLE:
            return gen_bumpy_circle(BumpyCircleParams(n=n, rng_seed=rng_seed, **given))
        case GeneratorName.NOISY_CIRCLE:
            return gen_noisy_circle(n, given.get("noise_sd", NOISY_CIRCLE_SD), rng_seed)
        case GeneratorName.NECKLACE:
            return gen_necklace(NecklaceParams(rng_seed=rng_seed, **given))
        case GeneratorName.SPHERE:
            return gen_sphere(SphereSampleParams(n=n, rng_seed=rng_seed, **given))
        case GeneratorName.LATTICE:
            return gen_duplicated_lattice(n, rng_seed)
    raise ValueError(f"unknown generator {generator}")


@dataclass(frozen=True)
class _BumpyTask:
    data: BumpyCircleParams
    config: SamplerConfig
    replicate: int
    m_max: int
    ext_mults: tuple[float, ...]
    ext_add: float


def _run_bumpy_task(task: _BumpyTask) -> list[dict]:
    space = euclidean_space(gen_bumpy_circle(task.data))
    m_max = min(task.m_max, space.partition.uniq)
    rows = []
    for mult in task.ext_mults:
        sweep = landmark_persistence_sweep(
            space, task.config, BUMPY_TARGET, m_max, replicates=1, ext_mult=mult, ext_add=task.ext_add, workers=1
        )
        run = sweep.replicates[0]
        start, end = run.dominance_range or (None, None)
        rows.append({
            "n": task.data.n,
            "w0": task.data.w0,
            "mu2": task.data.mu2,
            "sigma": task.data.sigma,
            "ratio": task.data.ratio,
            "procedure": str(task.config.procedure),
            "ext_mult": mult,
            "replicate": task.replicate,
            "ext_add": task.ext_add,
            "rank_variant": str(task.config.rank_variant),
            "data_seed": task.data.rng_seed,
            "rng_seed": task.config.rng_seed,
            "dom_start": start,
            "dom_end": end,
            "dominance": run.dominance,
        })
    return rows


def bumpy_grid(
    ns: Sequence[int],
    w0s: Sequence[float],
    mu2s: Sequence[float],
    sigmas: Sequence[float],
    ratios: Sequence[float],
    procedures: Sequence[Procedure],
    ext_mults: Sequence[float],
    ext_add: float = 0.0,
    replicates: int = 1,
    m_max: int = 30,
    seed_rule: SeedRule = SeedRule.RANDOM,
    tie_rule: TieRule = TieRule.FIRST_INDEX,
    rank_variant: RankVariant = RankVariant.CHECK,
    rng_seed: int = 0,
    workers: int | None = None,
) -> pd.DataFrame:
    """
    Full-factorial landmark dominance of the circle's Betti numbers on bumpy
    circle samples. Replicate r draws the same sample and sampler seed in every
    cell, so cells differ only by their parameters.
    """
    replicate_seeds = [spawn_seeds(seed, 2) for seed in spawn_seeds(rng_seed, replicates)]
    tasks = []
    for n, w0, mu2, sigma, ratio, procedure in itertools.product(ns, w0s, mu2s, sigmas, ratios, procedures):
        for r, (data_seed, sampler_seed) in enumerate(replicate_seeds):
            tasks.append(_BumpyTask(
                data=BumpyCircleParams(n=n, w0=w0, mu2=mu2, sigma=sigma, ratio=ratio, rng_seed=data_seed),
                config=SamplerConfig(
                    procedure=procedure,
                    num_landmarks=m_max,
                    seed_rule=seed_rule,
                    tie_rule=tie_rule,
                    rank_variant=rank_variant,
                    rng_seed=sampler_seed,
                ),
                replicate=r,
                m_max=m_max,
                ext_mults=tuple(ext_mults),
                ext_add=ext_add,
            ))
    logger.info(f"Bumpy circle grid: {len(tasks)} sample x procedure runs, {len(ext_mults)} extensions each")
    blocks = run_pool(_run_bumpy_task, tasks, workers=workers, progress="grid")
    frame = pd.DataFrame([row for block in blocks for row in block], columns=GRID_COLUMNS)
    return frame.sort_values(GRID_KEY, kind="stable").reset_index(drop=True)


def _timed(points: np.ndarray, config: SamplerConfig) -> float:
    # a fresh space per run, so no rank rows are cached from earlier runs
    space = euclidean_space(points)
    start = time.perf_counter()
    sample_landmarks(space, config)
    return time.perf_counter() - start


def _peak_bytes(points: np.ndarray, config: SamplerConfig) -> int:
    space = euclidean_space(points)
    tracemalloc.start()
    try:
        sample_landmarks(space, config)
        return tracemalloc.get_traced_memory()[1]
    finally:
        tracemalloc.stop()


def run_bench(
    generators: Sequence[GeneratorName],
    sizes: Sequence[int],
    procedures: Sequence[Procedure],
    repeats: int,
    num_landmarks: int,
    rng_seed: int,
    timeout: float,
) -> pd.DataFrame:
    """
    Time each procedure on samples of increasing size, one warm-up run excluded.
    A run slower than ``timeout`` seconds marks its cell as timed out, and the
    larger sizes of that generator and procedure are skipped.
    """
    data_seeds = spawn_seeds(rng_seed, len(sizes))
    rows = []
    for generator, procedure in itertools.product(generators, procedures):
        stopped = False
        for n, data_seed in zip(sizes, data_seeds):
            base = {"generator": str(generator), "n": n, "procedure": str(procedure)}
            if stopped:
                rows.extend({**base, "repeat": r, "status": "skipped"} for r in range(repeats))
                continue
            points = generate(generator, n, data_seed)
            count = min(num_landmarks, euclidean_space(points).partition.uniq)
            config = SamplerConfig(
                procedure=procedure, num_landmarks=count, seed_rule=SeedRule.RANDOM, rng_seed=rng_seed
            )
            if _timed(points, config) > timeout:
                stopped = True
                rows.extend({**base, "repeat": r, "num_landmarks": count, "status": "timeout"} for r in range(repeats))
                logger.warning(f"{procedure} on {generator} n={n} exceeded {timeout}s; larger sizes skipped")
                continue
            peak = _peak_bytes(points, config)
            for r in range(repeats):
                seconds = _timed(points, config)
                status = "ok"
                if seconds > timeout:
                    stopped = True
                    seconds, status = None, "timeout"
                rows.append({**base, "repeat": r, "num_landmarks": count, "seconds": seconds,
                             "peak_bytes": peak, "status": status})
            logger.info(f"Benchmarked {procedure} on {generator} n={n}")
    frame = pd.DataFrame(rows, columns=BENCH_COLUMNS)
    return frame.sort_values(BENCH_KEY, kind="stable").reset_index(drop=True)


def time_ratios(frame: pd.DataFrame, numerator: str = "lastfirst", denominator: str = "maxmin") -> pd.DataFrame:
    """Ratio of median times of two procedures per generator and size."""
    ok = frame[frame["status"] == "ok"]
    if ok.empty:
        return pd.DataFrame(columns=["generator", "n", "ratio"])
    medians = (
        ok
        .groupby(["generator", "n", "procedure"])["seconds"].median()
        .unstack("procedure")
    )
    if numerator not in medians or denominator not in medians:
        return pd.DataFrame(columns=["generator", "n", "ratio"])
    ratio = (medians[numerator] / medians[denominator]).rename("ratio")
    return ratio.dropna().reset_index()
