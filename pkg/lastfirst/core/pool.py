import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

from tqdm import tqdm

from lastfirst.core.settings import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def run_pool(
    func: Callable[[T], R],
    items: Iterable[T],
    workers: int | None = None,
    progress: str | None = None,
) -> list[R]:
    """
    Apply ``func`` to every item, in a process pool when more than one worker
    is configured. Results come back in item order whatever the completion order.
    """
    items = list(items)
    workers = workers or settings.NUM_WORKERS
    bar = progress is not None and len(items) > 1
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in tqdm(items, desc=progress, disable=not bar, leave=False)]
    logger.info(f"Running {len(items)} tasks on {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(tqdm(executor.map(func, items), total=len(items), desc=progress, disable=not bar, leave=False))
