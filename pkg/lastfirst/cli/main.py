import logging
from pathlib import Path

import click
import pandas as pd

from lastfirst import __version__
from lastfirst.cli.experiment_commands import bench, covers, inn, sweep
from lastfirst.cli.experiments import generate
from lastfirst.cli.logging_commands import logs
from lastfirst.cli.manifest import emit, read_manifest
from lastfirst.cli.options import (
    load_input,
    out_option,
    sampler_config,
    sampler_options,
    space_options,
)
from lastfirst.complex import cover_kind_for
from lastfirst.core.db_logging import RunInfo
from lastfirst.core.logging_config import setup_logging
from lastfirst.core.settings import settings
from lastfirst.core.utils import CoreUtils
from lastfirst.landmark import build_cover, sample_landmarks
from lastfirst.schema import Extension, GeneratorName, LandmarkReport, Procedure, SeedRule, SphereMode

logger = logging.getLogger(__name__)


@click.group()
@click.version_option(__version__, prog_name="lastfirst")
@click.pass_context
def cli(ctx):
    """Landmark sampling, landmark covers, nerves and the experiments built on them."""
    run = RunInfo(command=ctx.invoked_subcommand or "lastfirst")
    setup_logging(settings.LOG_LEVEL, settings.LOG_DB_PATH, run)


_GENERATOR_OPTIONS = {
    GeneratorName.BUMPY_CIRCLE: ("w0", "mu2", "sigma", "ratio"),
    GeneratorName.NOISY_CIRCLE: ("noise_sd",),
    GeneratorName.NECKLACE: ("n_string", "n_beads", "bead_count", "string_radius", "bead_radius"),
    GeneratorName.SPHERE: ("mode", "alpha", "beta"),
    GeneratorName.LATTICE: (),
}


@cli.command()
@click.argument("generator", type=click.Choice([g.value for g in GeneratorName]))
@click.option("--n", type=int, default=60, show_default=True, help="Sample size (necklace: see --n-string, --n-beads).")
@click.option("--rng-seed", type=int, default=settings.DEFAULT_RNG_SEED, show_default=True)
@click.option("--w0", type=float, default=None, help="bumpy-circle: weight of the uniform component.")
@click.option("--mu2", type=float, default=None, help="bumpy-circle: angle of the second Gaussian.")
@click.option("--sigma", type=float, default=None, help="bumpy-circle: Gaussian sd in radians.")
@click.option("--ratio", type=float, default=None, help="bumpy-circle: weight ratio of the Gaussians.")
@click.option("--noise-sd", type=float, default=None, help="noisy-circle: sd of the Gaussian noise.")
@click.option("--n-string", type=int, default=None, help="necklace: points on the string.")
@click.option("--n-beads", type=int, default=None, help="necklace: points per bead.")
@click.option("--bead-count", type=int, default=None, help="necklace: number of beads.")
@click.option("--string-radius", type=float, default=None)
@click.option("--bead-radius", type=float, default=None)
@click.option("--mode", type=click.Choice([m.value for m in SphereMode]), default=None, help="sphere: sampling mode.")
@click.option("--alpha", type=float, default=None, help="sphere: rejection skew exponent.")
@click.option("--beta", type=float, default=None, help="sphere: boosting skew exponent.")
@out_option
@click.pass_context
@CoreUtils.exception_handling_decorator
def gen(ctx, generator, n, rng_seed, out, **options):
    """Write a synthetic point cloud as CSV with header x,y[,z]."""
    name = GeneratorName(generator)
    allowed = _GENERATOR_OPTIONS[name]
    ignored = sorted(k for k, v in options.items() if v is not None and k not in allowed)
    if ignored:
        logger.warning(f"Options {ignored} do not apply to {name} and are ignored")
    points = generate(name, n, rng_seed, **{k: options[k] for k in allowed})
    frame = pd.DataFrame(points, columns=["x", "y", "z"][: points.shape[1]])
    emit(ctx, out, frame, [rng_seed])


@cli.command()
@click.argument("input", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@space_options
@click.option("--procedure", type=click.Choice([p.value for p in Procedure]), default=Procedure.MAXMIN.value,
              show_default=True)
@click.option("--num", type=int, default=None, help="Number of landmarks.")
@click.option("--radius", type=float, default=None, help="maxmin: stop once the cover radius is at most this.")
@click.option("--cardinality", type=int, default=None, help="lastfirst: stop once the cover cardinality is at most this.")
@sampler_options(seed_rule=SeedRule.CHEBYSHEV)
@click.option("--ext-mult", type=float, default=0.0, show_default=True, help="Multiplicative cover extension.")
@click.option("--ext-add", type=float, default=0.0, show_default=True, help="Additive cover extension.")
@out_option
@click.pass_context
@CoreUtils.exception_handling_decorator
def landmarks(ctx, input, fmt, symmetric, types, tolerance, procedure, num, radius, cardinality,
              seed_rule, tie_rule, rank_variant, rng_seed, ext_mult, ext_add, out):
    """
    Select landmarks from INPUT and write them, with the cover they define, as JSON.
    Without --num, --radius or --cardinality the selection runs until every point is covered.
    """
    space = load_input(input, fmt, symmetric, types, tolerance)
    if num is None and radius is None and cardinality is None:
        if procedure == Procedure.LASTFIRST:
            cardinality = 0
        else:
            radius = 0.0
    config = sampler_config(procedure, seed_rule, tie_rule, rank_variant, rng_seed,
                            num_landmarks=num, radius=radius, cardinality=cardinality)
    result = sample_landmarks(space, config)
    kind = cover_kind_for(config.procedure)
    cover = build_cover(space, result, kind, ext_mult, ext_add)
    report = LandmarkReport(
        procedure=config.procedure,
        seed_rule=config.seed_rule,
        tie_rule=config.tie_rule,
        rng_seed=config.rng_seed,
        rank_variant=config.rank_variant,
        cover_kind=kind,
        landmarks=result.landmarks,
        per_step=result.per_step,
        ext=Extension(mult=ext_mult, add=ext_add),
        sets=cover.set_lists(),
    )
    logger.info(f"{config.procedure}: {len(result.landmarks)} landmarks on {space.size} points")
    emit(ctx, out, report.model_dump_json(indent=2) + "\n", [rng_seed], [input])


@cli.command()
@click.argument("manifest", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), required=True,
              help="Where the replayed output goes.")
@CoreUtils.exception_handling_decorator
def replay(manifest, out):
    """Re-run the command recorded in MANIFEST, writing its output to --out."""
    recorded = read_manifest(manifest)
    if recorded.version != __version__:
        logger.warning(f"Manifest was written by version {recorded.version}, replaying with {__version__}")
    logger.info(f"Replaying {' '.join(recorded.argv)}")
    code = cli.main(args=[*recorded.argv, "--out", str(out)], prog_name="lastfirst", standalone_mode=False)
    if code:
        raise click.exceptions.Exit(code)


cli.add_command(sweep)
cli.add_command(inn)
cli.add_command(covers)
cli.add_command(bench)
cli.add_command(logs)
