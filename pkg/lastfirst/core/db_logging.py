"""
SQLite run log.

Each CLI invocation opens a run, stored with its command and package version,
and every log record is stored against the run that emitted it. A record
whose ``extra`` carries ``argv``, ``rng_seeds`` or ``output`` fills in those
fields of its run, so a run row holds the same command line and seeds as the
manifest of its output.
"""
import json
import logging
import sqlite3
import sys
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from logging.handlers import QueueHandler, QueueListener
from queue import Queue
from typing import Any, Optional

import aiosqlite

from lastfirst import __version__

_STANDARD_ATTRS = frozenset(
    logging.LogRecord("", 0, "", 0, "", (), None).__dict__
) | {"message", "asctime"}

# extra keys that describe the run rather than the record
RUN_FIELDS = ("argv", "rng_seeds", "output")

_SCHEMA = """
CREATE TABLE IF NOT EXISTS runs (
    run_id TEXT PRIMARY KEY,
    started TEXT NOT NULL,
    command TEXT NOT NULL,
    version TEXT NOT NULL,
    argv TEXT,
    rng_seeds TEXT,
    output TEXT
);
CREATE TABLE IF NOT EXISTS records (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    run_id TEXT NOT NULL REFERENCES runs (run_id),
    timestamp TEXT NOT NULL,
    level TEXT NOT NULL,
    logger_name TEXT NOT NULL,
    message TEXT NOT NULL,
    exc_info TEXT,
    extra TEXT
);
CREATE INDEX IF NOT EXISTS idx_records_run ON records (run_id);
CREATE INDEX IF NOT EXISTS idx_records_timestamp ON records (timestamp);
CREATE INDEX IF NOT EXISTS idx_runs_started ON runs (started);
"""


@dataclass
class RunInfo:
    command: str
    version: str = __version__
    run_id: str = field(default_factory=lambda: uuid.uuid4().hex)
    started: str = field(default_factory=lambda: datetime.now().isoformat())
    argv: Optional[list[str]] = None
    rng_seeds: Optional[list[int]] = None
    output: Optional[str] = None
    records: int = 0


@dataclass
class LogRecord:
    run_id: str
    command: str
    timestamp: str
    level: str
    logger_name: str
    message: str
    exc_info: Optional[str] = None
    extra: Optional[dict[str, Any]] = None


def _loads(text: Optional[str]) -> Any:
    return json.loads(text) if text else None


class RunLogHandler(logging.Handler):
    """
    Writes the records of one run to SQLite. Records are queued and written by
    a listener thread holding the only connection.
    """

    def __init__(self, db_path: str = "lastfirst.db", run: Optional[RunInfo] = None, queue_size: int = 1000):
        super().__init__()
        self.db_path = db_path
        self.run = run or RunInfo(command="library")
        self._conn: Optional[sqlite3.Connection] = None
        with sqlite3.connect(db_path) as conn:
            conn.executescript(_SCHEMA)
            conn.execute(
                "INSERT OR IGNORE INTO runs (run_id, started, command, version) VALUES (?, ?, ?, ?)",
                (self.run.run_id, self.run.started, self.run.command, self.run.version),
            )
        conn.close()

        self.queue: Queue = Queue(maxsize=queue_size)
        self.queue_handler = QueueHandler(self.queue)

        class _Writer(logging.Handler):
            def __init__(self, parent: "RunLogHandler"):
                super().__init__()
                self.parent = parent

            def emit(self, record: logging.LogRecord) -> None:
                self.parent._write(record)

        self.listener = QueueListener(self.queue, _Writer(self), respect_handler_level=True)
        self.listener.start()

    def _connection(self) -> sqlite3.Connection:
        if self._conn is None:
            self._conn = sqlite3.connect(self.db_path, check_same_thread=False)
        return self._conn

    def _write(self, record: logging.LogRecord) -> None:
        try:
            extra = {k: v for k, v in record.__dict__.items() if k not in _STANDARD_ATTRS}
            run_fields = {k: extra.pop(k) for k in RUN_FIELDS if k in extra}
            conn = self._connection()
            for name, value in run_fields.items():
                stored = value if name == "output" or value is None else json.dumps(value, default=str)
                conn.execute(f"UPDATE runs SET {name} = ? WHERE run_id = ?", (stored, self.run.run_id))
            conn.execute(
                "INSERT INTO records (run_id, timestamp, level, logger_name, message, exc_info, extra) "
                "VALUES (?, ?, ?, ?, ?, ?, ?)",
                (
                    self.run.run_id,
                    datetime.fromtimestamp(record.created).isoformat(),
                    record.levelname,
                    record.name,
                    record.getMessage(),
                    record.exc_text or None,
                    json.dumps(extra, default=str) if extra else None,
                ),
            )
            conn.commit()
        except Exception as e:
            print(f"Error writing to run log: {e}", file=sys.stderr)

    def emit(self, record: logging.LogRecord) -> None:
        self.queue_handler.emit(record)

    def close(self) -> None:
        """Stop the listener, flushing pending records, then release the connection."""
        self.listener.stop()
        if self._conn is not None:
            self._conn.close()
            self._conn = None
        super().close()


class RunLogReader:
    """Async queries over the run log."""

    def __init__(self, db_path: str = "lastfirst.db"):
        self.db_path = db_path

    async def get_logs(self,
                       level: Optional[str] = None,
                       start_time: Optional[str] = None,
                       end_time: Optional[str] = None,
                       logger_name: Optional[str] = None,
                       limit: int = 100,
                       run_id: Optional[str] = None,
                       command: Optional[str] = None) -> list[LogRecord]:
        """Records newest first, joined with the command of their run."""
        query = (
            "SELECT r.run_id, u.command, r.timestamp, r.level, r.logger_name, r.message, r.exc_info, r.extra "
            "FROM records r JOIN runs u ON u.run_id = r.run_id WHERE 1=1"
        )
        params: list[Any] = []
        for clause, value in (
            (" AND r.level = ?", level.upper() if level else None),
            (" AND r.timestamp >= ?", start_time),
            (" AND r.timestamp <= ?", end_time),
            (" AND r.logger_name = ?", logger_name),
            (" AND r.run_id = ?", run_id),
            (" AND u.command = ?", command),
        ):
            if value:
                query += clause
                params.append(value)
        query += " ORDER BY r.timestamp DESC, r.id DESC LIMIT ?"
        params.append(limit)

        async with aiosqlite.connect(self.db_path) as conn:
            async with conn.execute(query, params) as cursor:
                rows = await cursor.fetchall()
        return [LogRecord(*row[:7], extra=_loads(row[7])) for row in rows]

    async def get_runs(self, command: Optional[str] = None, limit: int = 20) -> list[RunInfo]:
        """Runs newest first, each with its number of stored records."""
        query = (
            "SELECT u.run_id, u.started, u.command, u.version, u.argv, u.rng_seeds, u.output, COUNT(r.id) "
            "FROM runs u LEFT JOIN records r ON r.run_id = u.run_id"
        )
        params: list[Any] = []
        if command:
            query += " WHERE u.command = ?"
            params.append(command)
        query += " GROUP BY u.run_id ORDER BY u.started DESC LIMIT ?"
        params.append(limit)

        async with aiosqlite.connect(self.db_path) as conn:
            async with conn.execute(query, params) as cursor:
                rows = await cursor.fetchall()
        return [
            RunInfo(
                run_id=run_id,
                started=started,
                command=command_,
                version=version,
                argv=_loads(argv),
                rng_seeds=_loads(seeds),
                output=output,
                records=count,
            )
            for run_id, started, command_, version, argv, seeds, output, count in rows
        ]

    async def clear_old_logs(self, days: int = 30) -> int:
        """
        Delete records older than ``days`` and the runs left without records
        that started before the cutoff; returns the number of records removed.
        """
        cutoff = (datetime.now() - timedelta(days=days)).isoformat()
        async with aiosqlite.connect(self.db_path) as conn:
            cursor = await conn.execute("DELETE FROM records WHERE timestamp < ?", (cutoff,))
            deleted = cursor.rowcount
            await conn.execute(
                "DELETE FROM runs WHERE started < ? AND run_id NOT IN (SELECT DISTINCT run_id FROM records)",
                (cutoff,),
            )
            await conn.commit()
        return deleted
