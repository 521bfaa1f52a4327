"""Option groups shared by several commands."""
from collections.abc import Callable
from pathlib import Path

import click

from lastfirst.core.settings import settings
from lastfirst.schema import Procedure, RankVariant, SamplerConfig, SeedRule, TieRule
from lastfirst.space import DissimilaritySpace, load_space
from lastfirst.space.io import INPUT_FORMATS


class CommaList(click.ParamType):
    """A comma-separated list such as ``36,60`` or ``0,0.5,1``."""

    name = "list"

    def __init__(self, item: type = int):
        self.item = item

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return tuple(value)
        try:
            return tuple(self.item(v) for v in str(value).split(",") if v.strip())
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list of {self.item.__name__}", param, ctx)


def _stack(*decorators: Callable) -> Callable:
    def apply(func):
        for decorator in reversed(decorators):
            func = decorator(func)
        return func
    return apply


def _parse_types(value: str | None) -> dict[str, str] | None:
    if not value:
        return None
    types = {}
    for item in value.split(","):
        name, _, kind = item.partition(":")
        if kind not in ("num", "cat"):
            raise click.BadParameter(f"column type of {name!r} must be num or cat")
        types[name] = kind
    return types


space_options = _stack(
    click.option("--format", "fmt", type=click.Choice(INPUT_FORMATS), default="coords", show_default=True,
                 help="coords: point coordinates (Euclidean); matrix: square dissimilarity matrix; "
                      "mixed: mixed-type table (Gower)."),
    click.option("--symmetric/--asymmetric", default=None,
                 help="Symmetry of a matrix input; read from <file>.meta.json or inferred when unset."),
    click.option("--types", default=None, help="Column types of a mixed table, e.g. age:num,sex:cat."),
    click.option("--tolerance", type=float, default=0.0, show_default=True,
                 help="Distance at or below which points are co-located."),
)


def load_input(path: Path, fmt: str, symmetric: bool | None, types: str | None, tolerance: float) -> DissimilaritySpace:
    return load_space(path, fmt=fmt, symmetric=symmetric, types=_parse_types(types), tolerance=tolerance)


def sampler_options(seed_rule: SeedRule = SeedRule.RANDOM) -> Callable:
    return _stack(
        click.option("--seed-rule", type=click.Choice([s.value for s in SeedRule]), default=seed_rule.value,
                     show_default=True, help="How the first landmark is chosen."),
        click.option("--tie-rule", type=click.Choice([t.value for t in TieRule]), default=TieRule.FIRST_INDEX.value,
                     show_default=True, help="How ties among candidates are broken."),
        click.option("--rank-variant", type=click.Choice([r.value for r in RankVariant]),
                     default=RankVariant.CHECK.value, show_default=True, help="Tie handling of relative ranks."),
        click.option("--rng-seed", type=int, default=settings.DEFAULT_RNG_SEED, show_default=True),
    )


def sampler_config(procedure: str, seed_rule: str, tie_rule: str, rank_variant: str, rng_seed: int, **stops) -> SamplerConfig:
    return SamplerConfig(
        procedure=Procedure(procedure),
        seed_rule=SeedRule(seed_rule),
        tie_rule=TieRule(tie_rule),
        rank_variant=RankVariant(rank_variant),
        rng_seed=rng_seed,
        **stops,
    )


procedures_option = click.option(
    "--procedure", "procedures", type=click.Choice([p.value for p in Procedure]), multiple=True,
    default=[Procedure.MAXMIN.value, Procedure.LASTFIRST.value], show_default=True,
    help="Landmark procedure; repeat for several.",
)

out_option = click.option(
    "--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
    help="Output file (stdout when unset); a manifest is written next to it.",
)
