import logging
import os
import sys
from typing import Optional

from lastfirst.core.db_logging import RunInfo, RunLogHandler


def setup_logging(log_level: str = "INFO", db_path: Optional[str] = None, run: Optional[RunInfo] = None) -> None:
    """
    Configure logging for CLI runs; data goes to stdout, so logs go to stderr.
    With ``db_path`` set, records are also stored in the run log under ``run``.
    """

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)

    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
        if isinstance(handler, RunLogHandler):
            handler.close()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    if db_path is not None:
        log_dir = os.path.dirname(db_path) or "."
        os.makedirs(log_dir, exist_ok=True)
        try:
            db_handler = RunLogHandler(db_path=db_path, run=run)
            db_handler.setFormatter(formatter)
            root_logger.addHandler(db_handler)
            console_handler.setLevel(log_level)
            db_handler.setLevel(logging.DEBUG)  # the database keeps everything
            root_logger.setLevel(logging.DEBUG)
        except Exception as e:
            from logging.handlers import RotatingFileHandler
            print(f"Failed to initialize database logging: {e}. Falling back to file logging.",
                  file=sys.stderr)
            file_handler = RotatingFileHandler(
                os.path.join(log_dir, "lastfirst.log"),
                maxBytes=10*1024*1024,  # 10MB
                backupCount=5
            )
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)

    logging.getLogger("aiosqlite").setLevel(logging.WARNING)

    logger = logging.getLogger(__name__)
    logger.debug("Logging system initialized")
