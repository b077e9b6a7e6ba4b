import logging
from multiprocessing import cpu_count
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

import joblib

log = logging.getLogger(__name__)

Shard = TypeVar("Shard")
Result = TypeVar("Result")


def split(items: Sequence, count: int) -> List[Sequence]:
    count = max(1, min(count, len(items)))
    size, extra = divmod(len(items), count)
    chunks, start = [], 0
    for index in range(count):
        end = start + size + (1 if index < extra else 0)
        chunks.append(items[start:end])
        start = end
    return chunks


def run_sharded(task: Callable[[Shard], Result], shards: Sequence[Shard], workers: Optional[int] = 1) -> List[Result]:
    """Apply ``task`` to every shard, in worker processes when ``workers > 1``.

    Results come back in shard order whatever the worker count; ``task`` must be a module-level
    function that builds its own engines.
    """
    shards = list(shards)
    if workers is None:
        workers = cpu_count()
    if workers <= 1 or len(shards) <= 1:
        return [task(shard) for shard in shards]
    log.info(f"running {len(shards)} shards on {min(workers, len(shards))} workers")
    return joblib.Parallel(n_jobs=min(workers, len(shards)))(joblib.delayed(task)(shard) for shard in shards)


def merge_max(results: Sequence[Tuple]) -> Optional[Tuple]:
    best = None
    for result in results:
        if result is not None and (best is None or result[0] > best[0]):
            best = result
    return best
