"""Chunked process pool for per-index checks; results come back in index order."""
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Any, Callable, List, Sequence, Tuple

logger = logging.getLogger("pool_service")


def chunk_ranges(lo: int, hi: int, parts: int) -> List[Tuple[int, int]]:
    """Split [lo, hi] into at most `parts` contiguous closed ranges."""
    if hi < lo:
        return []
    size = hi - lo + 1
    parts = max(1, min(parts, size))
    step, extra = divmod(size, parts)
    ranges = []
    start = lo
    for i in range(parts):
        end = start + step - 1 + (1 if i < extra else 0)
        ranges.append((start, end))
        start = end + 1
    return ranges


def run_chunks(worker: Callable[[Any], Any], payloads: Sequence[Any], jobs: int) -> List[Any]:
    """worker(payload) for each payload; the output list follows the payload order."""
    if jobs <= 1 or len(payloads) <= 1:
        return [worker(p) for p in payloads]
    results: List[Any] = [None] * len(payloads)
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        fut = {ex.submit(worker, p): i for i, p in enumerate(payloads)}
        for ft in as_completed(fut):
            results[fut[ft]] = ft.result()
    logger.debug(f"{len(payloads)} chunks finished on {jobs} workers")
    return results
