import asyncio
import json
import logging
from dataclasses import asdict
from pathlib import Path
from typing import Optional

import click
from pydantic import BaseModel

from lastfirst.core.db_logging import RunLogReader
from lastfirst.core.settings import settings
from lastfirst.core.utils import ConfigError, CoreUtils

logger = logging.getLogger(__name__)


class LogEntry(BaseModel):
    run_id: str
    command: str
    timestamp: str
    level: str
    logger_name: str
    message: str
    exc_info: Optional[str] = None


class RunEntry(BaseModel):
    run_id: str
    started: str
    command: str
    version: str
    argv: Optional[list[str]] = None
    rng_seeds: Optional[list[int]] = None
    output: Optional[str] = None
    records: int


@click.command()
@click.option("--db", default=settings.LOG_DB_PATH, help="Run-log database (LASTFIRST_LOG_DB_PATH).")
@click.option("--runs", "list_runs", is_flag=True, help="List runs with their command lines and seeds instead of records.")
@click.option("--run", "run_id", default=None, help="Only records of this run.")
@click.option("--command", default=None, help="Only runs of this subcommand.")
@click.option("--level", default=None, help="Filter by log level (DEBUG, INFO, WARNING, ERROR, CRITICAL).")
@click.option("--since", "start_time", default=None, help="Entries at or after this ISO timestamp.")
@click.option("--until", "end_time", default=None, help="Entries at or before this ISO timestamp.")
@click.option("--logger", "logger_name", default=None, help="Filter by logger name.")
@click.option("--limit", type=click.IntRange(1, 1000), default=100, show_default=True)
@click.option("--clear-older-than", type=click.IntRange(min=1), default=None,
              help="Delete entries older than this many days instead of listing.")
@CoreUtils.exception_handling_decorator
def logs(db, list_runs, run_id, command, level, start_time, end_time, logger_name, limit, clear_older_than):
    """Print run-log entries, or runs with --runs, as JSON lines, newest first."""
    if db is None or not Path(db).exists():
        raise ConfigError("no run-log database; set LASTFIRST_LOG_DB_PATH or pass --db", {"db": db})
    reader = RunLogReader(db_path=db)
    if clear_older_than is not None:
        deleted = asyncio.run(reader.clear_old_logs(clear_older_than))
        logger.info(f"Deleted {deleted} log entries older than {clear_older_than} days")
        click.echo(json.dumps({"deleted": deleted}))
        return
    if list_runs:
        for run in asyncio.run(reader.get_runs(command=command, limit=limit)):
            click.echo(RunEntry(**asdict(run)).model_dump_json())
        return
    records = asyncio.run(reader.get_logs(
        level=level,
        start_time=start_time,
        end_time=end_time,
        logger_name=logger_name,
        limit=limit,
        run_id=run_id,
        command=command,
    ))
    for record in records:
        click.echo(LogEntry(**{k: v for k, v in asdict(record).items() if k != "extra"}).model_dump_json())
