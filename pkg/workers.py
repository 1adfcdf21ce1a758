"""
Worker pool helpers for embarrassingly parallel scans.

Results always come back in input order, so output does not depend on the
number of workers.
"""

import logging
import math
import multiprocessing
import os
from typing import Any, Callable, Iterable, List, Optional, Tuple

from exceptions import ConfigError

logger = logging.getLogger(__name__)

JOBS_ENV = "BALANS_JOBS"


def resolve_jobs(flag: Optional[int] = None, config_jobs: Optional[int] = None) -> int:
    """
    Worker count:
    1. --jobs flag
    2. BALANS_JOBS environment variable
    3. config file value
    4. 1
    """
    if flag is not None:
        jobs = flag
    elif os.getenv(JOBS_ENV):
        try:
            jobs = int(os.getenv(JOBS_ENV))
        except ValueError:
            raise ConfigError(f"{JOBS_ENV} must be an integer, got {os.getenv(JOBS_ENV)!r}")
    elif config_jobs is not None:
        jobs = int(config_jobs)
    else:
        jobs = 1
    if jobs < 1:
        raise ConfigError(f"worker count must be at least 1, got {jobs}")
    return jobs


def split_range(lo: int, hi: int, parts: int) -> List[Tuple[int, int]]:
    """Split [lo, hi] into at most `parts` contiguous inclusive chunks."""
    if hi < lo:
        return []
    parts = max(1, min(parts, hi - lo + 1))
    size = int(math.ceil((hi - lo + 1) / parts))
    return [(start, min(hi, start + size - 1)) for start in range(lo, hi + 1, size)]


def parallel_map(func: Callable[[Any], Any], items: Iterable[Any], jobs: int = 1) -> List[Any]:
    """map(func, items) on a process pool when jobs > 1; func must be a top-level function."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    processes = min(jobs, len(items), multiprocessing.cpu_count())
    logger.debug("[POOL] %d tasks on %d worker processes", len(items), processes)
    with multiprocessing.Pool(processes=processes) as pool:
        return pool.map(func, items)
