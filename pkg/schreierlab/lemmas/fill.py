"""
Filling Omega from a large set: for B ~ mu_G(k), a fixed point misses X^B
with probability exactly (1 - |X|/n)^k, which gives the union bound
1 - n(1 - |X|/n)^k and, once k >= 4m log n with m = n/|X|, the cleaner
bound 1 - 2^(-k/m).
"""
from dataclasses import dataclass
from typing import Optional
import logging
import math
import numpy as np
from schreierlab.actions.base_action import BaseAction
from schreierlab.errors import BudgetExceeded, InvalidMultisetSize, OrderUnknown
from schreierlab.graph.point_set import PointSet
from schreierlab.lemmas.bound_check import (
    DEFAULT_MARGIN, TRIAL_BLOCK, BoundCheck, clamp_probability, power_bound
)
from schreierlab.lemmas.double_count import DEFAULT_ENUMERATION_BUDGET
from schreierlab.sampling.rng import SeededRng
from schreierlab.components.trial_pool import TrialPool

logger = logging.getLogger(__name__)

# inclusion-exclusion runs over all subsets of Omega
MAX_EXACT_DEGREE = 20


@dataclass(frozen=True)
class FillRecord:
    lemma: BoundCheck
    union: BoundCheck
    point_miss: BoundCheck
    point_miss_probability: float
    m: float
    exact_probability: Optional[float] = None

    @property
    def lemma_applies(self) -> bool:
        return self.lemma.precondition_met

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma.to_dict(),
            "union": self.union.to_dict(),
            "point_miss": self.point_miss.to_dict(),
            "point_miss_probability": self.point_miss_probability,
            "m": self.m,
            "exact_probability": self.exact_probability,
        }


def fill_bounds(n: int, x_size: int, k: int):
    """(m, lemma bound, union bound, per-point miss probability)"""
    m = n / x_size
    miss = (1.0 - x_size / n) ** k
    lemma_bound = 1.0 - 2.0 ** (-k / m)
    union_bound = clamp_probability(1.0 - n * miss)
    return m, lemma_bound, union_bound, miss


def _cover_trial(instance: BaseAction, x_points: np.ndarray, k: int, rng: SeededRng):
    covered = np.zeros(instance.degree, dtype=bool)
    for _ in range(k):
        covered[instance.act_many(instance.sample_uniform(rng), x_points)] = True
    return bool(covered.all()), not bool(covered[0])


def fill_check(
    instance: BaseAction,
    x: PointSet,
    k: int,
    trials: int,
    rng: SeededRng,
    margin: float = DEFAULT_MARGIN,
    exact_budget: int = DEFAULT_ENUMERATION_BUDGET,
    max_workers: Optional[int] = None
) -> FillRecord:
    """
    Frequency of X^B = Omega for B ~ mu_G(k), against the lemma bound and
    the union bound, plus the miss frequency of point 0. The exact cover
    probability is attached when Omega and G are small enough to enumerate.
    """
    if len(x) < 1:
        raise ValueError("fill needs a nonempty set X")
    if k < 1:
        raise InvalidMultisetSize(f"multiset size must be at least 1, got {k}")
    n = instance.degree
    m, lemma_bound, union_bound, miss = fill_bounds(n, len(x), k)
    applies = k >= 4 * m * math.log(n)
    x_points = x.indices()

    def run_block(start: int):
        stop = min(start + TRIAL_BLOCK, trials)
        outcomes = [_cover_trial(instance, x_points, k, rng.derive(i)) for i in range(start, stop)]
        return sum(c for c, _ in outcomes), sum(p for _, p in outcomes)

    with TrialPool(max_workers) as pool:
        blocks = pool.map(run_block, range(0, trials, TRIAL_BLOCK))
    covered = sum(c for c, _ in blocks)
    point_misses = sum(p for _, p in blocks)

    exact = None
    if n <= MAX_EXACT_DEGREE and instance.group_order is not None and instance.group_order <= exact_budget:
        exact = exact_cover_probability(instance, x, k, exact_budget)

    empirical = covered / trials
    return FillRecord(
        lemma=BoundCheck(empirical, clamp_probability(lemma_bound), trials, margin,
                         precondition_met=applies, precondition="" if applies else "k >= 4 m log n"),
        union=BoundCheck(empirical, union_bound, trials, margin),
        point_miss=BoundCheck(point_misses / trials, power_bound(1.0 - len(x) / n, k), trials, margin),
        point_miss_probability=miss,
        m=m,
        exact_probability=exact
    )


def exact_cover_probability(
    instance: BaseAction,
    x: PointSet,
    k: int,
    budget: int = DEFAULT_ENUMERATION_BUDGET
) -> float:
    """
    P(X^B = Omega) for B ~ mu_G(k), by inclusion-exclusion over the sets U
    of points left uncovered:  sum over U of (-1)^|U| q(U)^k, where q(U) is
    the fraction of g with X^g disjoint from U.
    """
    n = instance.degree
    if n > MAX_EXACT_DEGREE:
        raise BudgetExceeded(2 ** n, 2 ** MAX_EXACT_DEGREE, what="subsets")
    if instance.group_order is None:
        raise OrderUnknown(f"order of {instance.spec} does not fit a machine word")
    elements = instance.enumerate_group(budget)
    x_points = x.indices()
    bits = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))

    # histogram of the images X^g as bitmasks
    histogram = np.zeros(1 << n, dtype=np.float64)
    for g in elements:
        image = instance.act_many(g, x_points)
        histogram[int(np.bitwise_or.reduce(bits[image])) if image.size else 0] += 1

    # subset sums: contained[S] = #{g : X^g is a subset of S}
    contained = histogram
    for i in range(n):
        view = contained.reshape(-1, 2, 1 << i)
        view[:, 1, :] += view[:, 0, :]

    parity = np.zeros(1 << n, dtype=np.int8)
    for i in range(n):
        parity[1 << i:1 << (i + 1)] = parity[:1 << i] ^ 1
    signs = 1.0 - 2.0 * parity

    full = (1 << n) - 1
    uncovered = np.arange(1 << n)
    disjoint = contained[full ^ uncovered] / len(elements)
    probability = float(np.sum(signs * disjoint ** k))
    logger.debug("Exact cover probability of %s with k=%d: %.6g", instance.spec, k, probability)
    return clamp_probability(probability)
