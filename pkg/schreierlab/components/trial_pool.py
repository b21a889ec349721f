from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar
import logging
from schreierlab.config.environment import RuntimeSettings

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')

class TrialPool:
    """
    Worker pool for independent trials.

    Results come back in submission order whatever the worker count, so
    callers can reduce them deterministically. numpy releases the GIL in the
    table gathers that dominate each trial.
    """
    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = max_workers or RuntimeSettings().workers
        self._executor: Optional[ThreadPoolExecutor] = None

    def __enter__(self) -> "TrialPool":
        if self.max_workers > 1:
            self._executor = ThreadPoolExecutor(max_workers=self.max_workers)
        return self

    def __exit__(self, *exc) -> None:
        self.shutdown()

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """fn over items, results in input order"""
        if self._executor is None:
            return [fn(item) for item in items]
        return list(self._executor.map(fn, items))

    def shutdown(self, wait: bool = True) -> None:
        """Cleanup resources and shutdown the executor"""
        if self._executor is not None:
            self._executor.shutdown(wait=wait)
            self._executor = None


def run_trials(fn: Callable[[T], R], items: Iterable[T], max_workers: Optional[int] = None) -> List[R]:
    """One-shot ordered map over a fresh pool"""
    with TrialPool(max_workers) as pool:
        results = pool.map(fn, items)
    logger.debug("Ran %d trials on %d workers", len(results), pool.max_workers)
    return results
