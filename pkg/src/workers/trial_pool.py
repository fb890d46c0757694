"""
Bounded process pool for independent trials.

Work items are mapped in submission order, so results come back in the
order of the work list however the processes are scheduled. With one
worker everything runs inline in the calling process.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from src.utils.logger import get_logger
from src.utils.settings import get_settings

logger = get_logger(__name__)

Item = TypeVar("Item")
Result = TypeVar("Result")


def resolve_workers(workers: Optional[int] = None) -> int:
    return max(1, workers if workers is not None else get_settings().workers)


def run_ordered(
    func: Callable[[Item], Result],
    items: Sequence[Item],
    workers: Optional[int] = None,
) -> List[Result]:
    """
    Apply ``func`` to every item, in parallel when more than one worker is set.

    Args:
        func: Picklable module-level callable (or ``functools.partial`` of one)
        items: Work list
        workers: Pool size; settings default when None

    Returns:
        Results in the order of ``items``
    """
    workers = resolve_workers(workers)
    if workers == 1 or len(items) <= 1:
        return [func(item) for item in items]

    chunksize = max(1, len(items) // (workers * 4))
    logger.debug("Starting worker pool", workers=workers, items=len(items), chunksize=chunksize)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=chunksize))
