"""
Output files and the run manifests written next to them.

A manifest records the resolved command line of a run, so ``lastfirst replay``
can regenerate the output. Manifests carry no timestamps; replaying a run
rewrites both the output and the manifest byte for byte.
"""
import hashlib
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any

import click
import pandas as pd

from lastfirst import __version__
from lastfirst.cli.options import CommaList
from lastfirst.core.settings import settings
from lastfirst.schema import RunManifest

logger = logging.getLogger(__name__)

MANIFEST_SUFFIX = ".manifest.json"


def manifest_path(out: str | Path) -> Path:
    return Path(f"{out}{MANIFEST_SUFFIX}")


def file_digest(path: str | Path) -> str:
    with open(path, "rb") as f:
        if hasattr(hashlib, "file_digest"):
            return hashlib.file_digest(f, "sha256").hexdigest()
        return hashlib.sha256(f.read()).hexdigest()  # Python < 3.11


def _plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, Path):
        return str(value)
    return value


def resolved_argv(ctx: click.Context, skip: tuple[str, ...] = ("out",)) -> list[str]:
    """
    The command line that reproduces ``ctx``, every option spelled out with
    its resolved value, defaults included.
    """
    argv = [ctx.info_name]
    positional: list[str] = []
    for param in ctx.command.params:
        if param.name in skip:
            continue
        value = ctx.params.get(param.name)
        if isinstance(param, click.Argument):
            if value is not None:
                positional.append(str(_plain(value)))
            continue
        if value is None:
            continue
        if param.is_flag and param.secondary_opts:
            argv.append(param.opts[0] if value else param.secondary_opts[0])
        elif param.is_flag:
            if value:
                argv.append(max(param.opts, key=len))
        elif isinstance(param.type, CommaList):
            argv.extend([max(param.opts, key=len), ",".join(str(v) for v in value)])
        elif param.multiple:
            for item in value:
                argv.extend([max(param.opts, key=len), str(_plain(item))])
        else:
            argv.extend([max(param.opts, key=len), str(_plain(value))])
    return argv + positional


def write_manifest(
    ctx: click.Context,
    out: str | Path,
    rng_seeds: list[int],
    inputs: list[str | Path] = (),
) -> Path:
    manifest = RunManifest(
        command=ctx.info_name,
        argv=resolved_argv(ctx),
        parameters={k: _plain(v) for k, v in sorted(ctx.params.items()) if k != "out"},
        rng_seeds=rng_seeds,
        input_digests={str(p): file_digest(p) for p in inputs},
        version=__version__,
    )
    path = manifest_path(out)
    path.write_text(json.dumps(manifest.model_dump(mode="json"), indent=2, sort_keys=True) + "\n")
    logger.info(f"Manifest written to {path}")
    return path


def read_manifest(path: str | Path) -> RunManifest:
    return RunManifest.model_validate_json(Path(path).read_text())


def write_table(frame: pd.DataFrame, out: str | Path | None) -> None:
    """CSV to ``out``, or to stdout when no path is given."""
    text = frame.to_csv(index=False, float_format=settings.FLOAT_FORMAT, lineterminator="\n")
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)
        logger.info(f"Wrote {len(frame)} rows to {out}")


def write_text(text: str, out: str | Path | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)
        logger.info(f"Wrote {out}")


def emit(
    ctx: click.Context,
    out: str | Path | None,
    payload: pd.DataFrame | str,
    rng_seeds: list[int],
    inputs: list[str | Path] = (),
) -> None:
    """Write a command's output and, for file outputs, its manifest."""
    if isinstance(payload, pd.DataFrame):
        write_table(payload, out)
    else:
        write_text(payload, out)
    if out is not None:
        write_manifest(ctx, out, rng_seeds, inputs)
    logger.info(
        f"{ctx.info_name} finished",
        extra={"argv": resolved_argv(ctx), "rng_seeds": [int(s) for s in rng_seeds], "output": out and str(out)},
    )
