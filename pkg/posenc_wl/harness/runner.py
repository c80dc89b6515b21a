"""Pair-level parallel map with deterministic result order."""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional, TypeVar

from posenc_wl.core.config import get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# Settings that change computed values; workers must see the parent's values.
_SHARED_SETTINGS = ("QUANT_STEP", "FEATURE_QUANT_STEP", "ZERO_TOL", "EIGEN_GROUP_TOL", "TWO_WL_MAX_N")


def _settings_snapshot() -> Dict[str, Any]:
    settings = get_settings()
    return {name: getattr(settings, name) for name in _SHARED_SETTINGS}


def _init_worker(snapshot: Dict[str, Any]) -> None:
    settings = get_settings()
    for name, value in snapshot.items():
        setattr(settings, name, value)


def apply_pool(func: Callable[[T], R], items: Iterable[T], jobs: Optional[int] = None) -> List[R]:
    """
    Apply ``func`` to every item, in parallel when ``jobs > 1``.

    Args:
        func: Picklable top-level function
        items: Work items (picklable)
        jobs: Worker count; None uses ``JOBS`` (0 = all cores), 1 runs in-process

    Returns:
        Results in input order, whatever the worker count
    """
    work = list(items)
    workers = get_settings().jobs_resolved if jobs is None or jobs == 0 else jobs
    workers = min(workers, len(work))
    if workers <= 1:
        return [func(item) for item in work]
    logger.info(f"Running {len(work)} items on {workers} workers")
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_init_worker, initargs=(_settings_snapshot(),)
    ) as pool:
        return list(pool.map(func, work))
