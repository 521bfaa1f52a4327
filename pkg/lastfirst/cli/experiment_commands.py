import logging
import math
from pathlib import Path

import click
import pandas as pd

from lastfirst.cli.experiments import bumpy_grid, run_bench, time_ratios
from lastfirst.cli.manifest import emit
from lastfirst.cli.options import (
    CommaList,
    load_input,
    out_option,
    procedures_option,
    sampler_config,
    sampler_options,
    space_options,
)
from lastfirst.complex import landmark_persistence_sweep
from lastfirst.core.rng import spawn_seeds
from lastfirst.core.settings import settings
from lastfirst.core.utils import ConfigError, CoreUtils, ParseError
from lastfirst.evalmetrics import cover_evaluation, nested_cv, temporal_cv
from lastfirst.schema import (
    CvMode,
    CvPlan,
    GeneratorName,
    Procedure,
    RankVariant,
    SeedRule,
    TieRule,
    WeightingScheme,
    WeightKind,
)
from lastfirst.space import load_outcomes

logger = logging.getLogger(__name__)

_input_argument = click.argument("input", type=click.Path(exists=True, dir_okay=False, path_type=Path))
_outcomes_argument = click.argument("outcomes", type=click.Path(exists=True, dir_okay=False, path_type=Path))


@click.command()
@click.argument("input", required=False, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@space_options
@procedures_option
@click.option("--target", type=CommaList(int), default="1,1", show_default=True,
              help="Betti numbers b0,b1,... the nerves should have.")
@click.option("--m-max", type=int, default=30, show_default=True, help="Largest number of landmarks.")
@click.option("--replicates", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--ext-mult", "ext_mults", type=CommaList(float), default="0", show_default=True,
              help="Multiplicative extensions to sweep.")
@click.option("--ext-add", type=float, default=0.0, show_default=True)
@click.option("--dim-cap", type=int, default=None, help="Largest simplex dimension (default: length of --target).")
@click.option("--n", "ns", type=CommaList(int), default="60", show_default=True,
              help="Grid without INPUT: bumpy circle sample sizes.")
@click.option("--w0", "w0s", type=CommaList(float), default="0.05", show_default=True,
              help="Grid: weights of the uniform component.")
@click.option("--mu2", "mu2s", type=CommaList(float), default=str(math.pi), show_default=True,
              help="Grid: angles of the second Gaussian.")
@click.option("--sigma", "sigmas", type=CommaList(float), default=str(math.pi / 6), show_default=True,
              help="Grid: Gaussian sds.")
@click.option("--ratio", "ratios", type=CommaList(float), default="10", show_default=True,
              help="Grid: weight ratios of the Gaussians.")
@sampler_options(seed_rule=SeedRule.RANDOM)
@out_option
@click.pass_context
@CoreUtils.exception_handling_decorator
def sweep(ctx, input, fmt, symmetric, types, tolerance, procedures, target, m_max, replicates, ext_mults, ext_add,
          dim_cap, ns, w0s, mu2s, sigmas, ratios, seed_rule, tie_rule, rank_variant, rng_seed, out):
    """
    Landmark persistence. With INPUT, write the Betti numbers of the landmark
    nerve for every number of landmarks m = 1 .. m-max. Without INPUT, run the
    bumpy circle grid and write one dominance record per cell and replicate.
    """
    if input is None:
        frame = bumpy_grid(
            ns, w0s, mu2s, sigmas, ratios,
            procedures=[Procedure(p) for p in procedures],
            ext_mults=ext_mults,
            ext_add=ext_add,
            replicates=replicates,
            m_max=m_max,
            seed_rule=SeedRule(seed_rule),
            tie_rule=TieRule(tie_rule),
            rank_variant=RankVariant(rank_variant),
            rng_seed=rng_seed,
            workers=settings.NUM_WORKERS,
        )
        summary = frame.groupby(["procedure", "ext_mult"])["dominance"].median()
        for (procedure, mult), median in summary.items():
            logger.info(f"{procedure} ext_mult={mult:g}: median dominance {median:g}")
        emit(ctx, out, frame, [rng_seed])
        return

    space = load_input(input, fmt, symmetric, types, tolerance)
    frames = []
    for procedure in procedures:
        config = sampler_config(procedure, seed_rule, tie_rule, rank_variant, rng_seed, num_landmarks=m_max)
        for mult in ext_mults:
            result = landmark_persistence_sweep(
                space, config, tuple(target), m_max, replicates, mult, ext_add, dim_cap, workers=settings.NUM_WORKERS
            )
            logger.info(
                f"{procedure} ext_mult={mult:g}: median dominance {result.median_dominance:g}, "
                f"detected in {result.detection_rate:.0%} of replicates"
            )
            frames.append(pd.DataFrame(result.rows()))
    emit(ctx, out, pd.concat(frames, ignore_index=True), spawn_seeds(rng_seed, replicates), [input])


@click.command()
@_input_argument
@_outcomes_argument
@space_options
@click.option("--procedure", "procedures", type=click.Choice([p.value for p in Procedure]), multiple=True,
              default=[p.value for p in Procedure], show_default=True, help="Landmark procedure; repeat for several.")
@click.option("--plan", type=click.Choice([m.value for m in CvMode]), default=CvMode.NESTED.value, show_default=True)
@click.option("--landmark-counts", type=CommaList(int), default="36", show_default=True)
@click.option("--scheme", "schemes", type=click.Choice([w.value for w in WeightKind]), multiple=True,
              default=[w.value for w in WeightKind], show_default=True, help="Weighting schemes to tune over (nested).")
@click.option("--bandwidth", type=float, default=None, help="Gaussian bandwidth (median landmark distance when unset).")
@click.option("--neighborhood-size", type=click.IntRange(min=1), default=settings.NEIGHBORHOOD_SIZE, show_default=True,
              help="Largest neighborhood of the landmark profiles.")
@click.option("--outer-folds", type=int, default=6, show_default=True)
@click.option("--inner-folds", type=int, default=6, show_default=True)
@click.option("--parts", type=int, default=6, show_default=True, help="Parts of each evaluation period (temporal).")
@click.option("--windows", type=CommaList(str), default=None, help="Ordered period labels (temporal).")
@click.option("--include-knn", is_flag=True, help="Add the plain nearest-neighbor baseline (nested).")
@sampler_options(seed_rule=SeedRule.RANDOM)
@out_option
@click.pass_context
@CoreUtils.exception_handling_decorator
def inn(ctx, input, outcomes, fmt, symmetric, types, tolerance, procedures, plan, landmark_counts, schemes, bandwidth,
        neighborhood_size, outer_folds, inner_folds, parts, windows, include_knn, seed_rule, tie_rule, rank_variant,
        rng_seed, out):
    """Cross-validated AUROC of interpolative nearest-neighbor predictions of the outcomes in OUTCOMES."""
    space = load_input(input, fmt, symmetric, types, tolerance)
    table = load_outcomes(outcomes, space.size)
    if not landmark_counts:
        raise ConfigError("--landmark-counts is empty")
    cv_plan = CvPlan(
        mode=CvMode(plan),
        outer_folds=outer_folds,
        inner_folds=inner_folds,
        parts=parts,
        window_keys=list(windows) if windows else None,
        rng_seed=rng_seed,
    )
    weightings = [
        WeightingScheme(kind=WeightKind(kind), bandwidth=bandwidth if kind == WeightKind.GAUSSIAN else None)
        for kind in schemes
    ]
    frames = []
    for i, procedure in enumerate(procedures):
        config = sampler_config(procedure, seed_rule, tie_rule, rank_variant, rng_seed,
                                num_landmarks=max(landmark_counts))
        if cv_plan.mode == CvMode.NESTED:
            frame = nested_cv(
                space, table["outcome"].to_numpy(), config, cv_plan, landmark_counts,
                schemes=weightings,
                neighborhood_size=neighborhood_size,
                include_knn=include_knn and i == 0,
                workers=settings.NUM_WORKERS,
            )
        else:
            if "period" not in table.columns:
                raise ParseError(f"{outcomes} has no period column for temporal evaluation")
            frame = temporal_cv(
                space, table["outcome"].to_numpy(), table["period"].to_numpy(), config, cv_plan, landmark_counts,
                neighborhood_size=neighborhood_size,
                bandwidth=bandwidth,
            )
        logger.info(f"{procedure}: mean AUROC {frame['auroc'].mean():.3f} over {len(frame)} evaluations")
        frames.append(frame)
    emit(ctx, out, pd.concat(frames, ignore_index=True), [rng_seed], [input, outcomes])


@click.command()
@_input_argument
@_outcomes_argument
@space_options
@procedures_option
@click.option("--landmark-counts", type=CommaList(int), default="12,24,36", show_default=True)
@click.option("--ext-mults", type=CommaList(float), default="0,0.5,1,2", show_default=True)
@click.option("--ext-add", type=float, default=0.0, show_default=True)
@sampler_options(seed_rule=SeedRule.RANDOM)
@out_option
@click.pass_context
@CoreUtils.exception_handling_decorator
def covers(ctx, input, outcomes, fmt, symmetric, types, tolerance, procedures, landmark_counts, ext_mults, ext_add,
           seed_rule, tie_rule, rank_variant, rng_seed, out):
    """Nerve size, partition coefficient and outcome AUROC of landmark covers of INPUT."""
    space = load_input(input, fmt, symmetric, types, tolerance)
    y = load_outcomes(outcomes, space.size)["outcome"].to_numpy()
    if not landmark_counts:
        raise ConfigError("--landmark-counts is empty")
    frames = []
    for procedure in procedures:
        config = sampler_config(procedure, seed_rule, tie_rule, rank_variant, rng_seed,
                                num_landmarks=max(landmark_counts))
        frames.append(cover_evaluation(space, y, config, landmark_counts, ext_mults, ext_add))
    emit(ctx, out, pd.concat(frames, ignore_index=True), [rng_seed], [input, outcomes])


@click.command()
@click.option("--generator", "generators", type=click.Choice([g.value for g in GeneratorName]), multiple=True,
              default=[GeneratorName.NOISY_CIRCLE.value, GeneratorName.LATTICE.value], show_default=True)
@click.option("--sizes", type=CommaList(int), default="250,500,1000", show_default=True, help="Ascending sample sizes.")
@procedures_option
@click.option("--repeats", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--num", type=click.IntRange(min=1), default=100, show_default=True,
              help="Landmarks per run, capped at the number of distinct points.")
@click.option("--rng-seed", type=int, default=settings.DEFAULT_RNG_SEED, show_default=True)
@click.option("--timeout", type=float, default=settings.BENCH_TIMEOUT, show_default=True,
              help="Seconds after which a cell counts as missing.")
@out_option
@click.pass_context
@CoreUtils.exception_handling_decorator
def bench(ctx, generators, sizes, procedures, repeats, num, rng_seed, timeout, out):
    """Time the landmark procedures on synthetic data of increasing size."""
    if not sizes or list(sizes) != sorted(sizes):
        raise ConfigError(f"--sizes must be ascending, got {list(sizes)}")
    frame = run_bench(
        [GeneratorName(g) for g in generators],
        sizes,
        [Procedure(p) for p in procedures],
        repeats,
        num,
        rng_seed,
        timeout,
    )
    for row in time_ratios(frame).itertuples():
        logger.info(f"{row.generator} n={row.n}: lastfirst/maxmin median time ratio {row.ratio:.2f}")
    emit(ctx, out, frame, [rng_seed])
