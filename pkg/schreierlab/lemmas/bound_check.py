"""
Empirical frequencies of random events compared against analytic
probability bounds, with a sigma acceptance margin instead of a bare
pass/fail.
"""
from dataclasses import dataclass
from typing import Callable, Optional
import logging
import math
from schreierlab.components.trial_pool import TrialPool
from schreierlab.sampling.rng import SeededRng

logger = logging.getLogger(__name__)

DEFAULT_MARGIN = 3.0
TRIAL_BLOCK = 256


@dataclass(frozen=True)
class BoundCheck:
    """Observed frequency of an event against an analytic lower bound"""
    empirical: float
    analytic_bound: float
    trials: int
    margin: float = DEFAULT_MARGIN
    precondition_met: bool = True
    precondition: str = ""

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("a bound check needs at least one trial")
        if not 0.0 <= self.empirical <= 1.0:
            raise ValueError(f"empirical frequency {self.empirical} outside [0, 1]")

    @property
    def std_error(self) -> float:
        return math.sqrt(self.empirical * (1.0 - self.empirical) / self.trials)

    @property
    def satisfied(self) -> bool:
        return self.empirical >= self.analytic_bound - self.margin * self.std_error

    def within(self, value: float) -> bool:
        """
        Two-sided agreement with an exact probability. The standard error of
        `value` itself is used too, so a rare event never seen in the trials
        still agrees with its tiny exact probability.
        """
        expected_error = math.sqrt(max(value * (1.0 - value), 0.0) / self.trials)
        return abs(self.empirical - value) <= self.margin * max(self.std_error, expected_error)

    def to_dict(self) -> dict:
        return {
            "empirical": self.empirical,
            "bound": self.analytic_bound,
            "trials": self.trials,
            "std_error": self.std_error,
            "satisfied": self.satisfied,
            "precondition_met": self.precondition_met,
            "precondition": self.precondition,
        }


def count_events(
    event: Callable[[SeededRng], bool],
    trials: int,
    rng: SeededRng,
    max_workers: Optional[int] = None
) -> int:
    """
    Number of trials in which `event` happens. Trial i always runs on
    rng.derive(i), so the count does not depend on the worker count.
    """
    def run_block(start: int) -> int:
        stop = min(start + TRIAL_BLOCK, trials)
        return sum(1 for i in range(start, stop) if event(rng.derive(i)))

    with TrialPool(max_workers) as pool:
        counts = pool.map(run_block, range(0, trials, TRIAL_BLOCK))
    hits = sum(counts)
    logger.debug("%d/%d trials hit the event", hits, trials)
    return hits


def clamp_probability(value: float) -> float:
    return min(1.0, max(0.0, value))


def power_bound(base: float, exponent: float) -> float:
    """base**exponent for a per-step probability, clamped into [0, 1]"""
    return clamp_probability(clamp_probability(base) ** exponent)
