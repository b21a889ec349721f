"""
Arithmetic of the sphere-growth schedule: D blocks of h random elements,
D = floor(C log n / log k), h = floor(k / D). Everything works on logs, so n
may be far beyond anything a group could be built for.
"""
from dataclasses import dataclass, asdict
from typing import Optional
import logging
import math
import numpy as np
from schreierlab.errors import DegenerateSchedule, ScheduleInfeasible
from schreierlab.lemmas.bound_check import clamp_probability

logger = logging.getLogger(__name__)

GROWTH_INEQUALITY = "h^(D/2) > n"


@dataclass(frozen=True)
class ProofSchedule:
    C: float
    D: int
    h: int
    feasible_hD: bool
    # floored form h^(D/2) > n
    feasible_growth: bool
    # continuous form (k log k / (C log n))^C > k^2
    continuous_growth: bool
    epsilon: float
    k: int
    n: int
    probability_floor: float

    @property
    def feasible(self) -> bool:
        return self.feasible_hD and self.feasible_growth

    def to_dict(self) -> dict:
        data = asdict(self)
        data["n"] = str(self.n) if self.n >= 2**53 else self.n
        return data


def _check_arguments(n: int, k: int, epsilon: float) -> None:
    if k < 2:
        raise ValueError(f"schedule needs k >= 2, got {k}")
    if n < 2:
        raise ValueError(f"schedule needs n >= 2, got {n}")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")


def probability_floor(D: int, h: int, epsilon: float) -> float:
    """1 - 2D / h^(2/eps - 1), the chance every stage grows as planned, clamped into [0, 1]"""
    if h < 1:
        return 0.0
    exponent = 2.0 / epsilon - 1.0
    return clamp_probability(1.0 - 2.0 * D * math.exp(-exponent * math.log(h)))


def _schedule(n: int, k: int, epsilon: float, C: float, D: int) -> ProofSchedule:
    if D < 1:
        raise DegenerateSchedule(f"D = {D} for n={n}, k={k}, C={C}")
    h = k // D
    if h < 1:
        raise DegenerateSchedule(f"h = 0 for D = {D} > k = {k}")
    log_n = math.log(n)
    log_k = math.log(k)
    ratio = k * log_k / (C * log_n)
    continuous = ratio > 0 and C * math.log(ratio) > 2.0 * log_k
    return ProofSchedule(
        C=C,
        D=D,
        h=h,
        feasible_hD=h * D <= k,
        feasible_growth=(D / 2.0) * math.log(h) > log_n,
        continuous_growth=continuous,
        epsilon=epsilon,
        k=k,
        n=n,
        probability_floor=probability_floor(D, h, epsilon)
    )


def proof_schedule(n: int, k: int, epsilon: float, C: float) -> ProofSchedule:
    """Schedule for a given constant C"""
    _check_arguments(n, k, epsilon)
    if C <= 0:
        raise ValueError(f"C must be positive, got {C}")
    D = math.floor(C * math.log(n) / math.log(k))
    return _schedule(n, k, epsilon, C, D)


def _depth_growth(n: int, k: int) -> np.ndarray:
    """(D/2) log floor(k/D) - log n for D = 1..k"""
    depths = np.arange(1, k + 1, dtype=np.float64)
    heights = np.floor(k / depths)
    return depths / 2.0 * np.log(heights) - math.log(n)


def smallest_feasible_schedule(n: int, k: int, epsilon: float) -> ProofSchedule:
    """
    Schedule for the smallest C that makes the growth inequality hold.

    D is nondecreasing in C, so the smallest C is the one giving the
    smallest feasible depth D*, namely C = D* log k / log n.
    """
    _check_arguments(n, k, epsilon)
    feasible = np.flatnonzero(_depth_growth(n, k) > 0)
    if feasible.size == 0:
        raise ScheduleInfeasible(GROWTH_INEQUALITY)
    D = int(feasible[0]) + 1
    C = D * math.log(k) / math.log(n)
    logger.debug("Smallest feasible schedule for n=%s, k=%d: C=%.4f, D=%d", n, k, C, D)
    return _schedule(n, k, epsilon, C, D)


def best_schedule(n: int, k: int, epsilon: float) -> ProofSchedule:
    """The depth with the largest h^(D/2), feasible or not"""
    _check_arguments(n, k, epsilon)
    D = int(np.argmax(_depth_growth(n, k))) + 1
    return _schedule(n, k, epsilon, D * math.log(k) / math.log(n), D)


def feasible_or_best(n: int, k: int, epsilon: float, allow_infeasible: bool) -> ProofSchedule:
    try:
        return smallest_feasible_schedule(n, k, epsilon)
    except ScheduleInfeasible:
        if not allow_infeasible:
            raise
        schedule = best_schedule(n, k, epsilon)
        logger.warning("No feasible schedule for n=%s, k=%d; using D=%d, h=%d", n, k, schedule.D, schedule.h)
        return schedule
