"""
Sphere growth traced stage by stage along the growth schedule.

lemma6 splits A into D blocks of h elements and follows
X_i = X_(i-1)^(A_i) from X_0 = {w}. Each X_i lies in the sphere of radius i
of the graph on A. The stage condition |X_(i-1)| <= n/h^(2/eps) must fail
somewhere when h^(D/2) > n, and a failure certifies |X_i| > n/k^(2/eps).

prop1 runs lemma6 on the first k/2 elements, then continues with C2 blocks of
floor(k^(eps^2)) elements under the condition |X| <= n/b^(1/(2 eps)),
aiming at n/k^(eps/2).
"""
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple
import logging
import math
from schreierlab.actions.base_action import BaseAction
from schreierlab.errors import InvalidMultisetSize, PointOutOfRange, ScheduleInfeasible
from schreierlab.graph.point_set import PointSet
from schreierlab.graph.schreier_graph import image_under
from schreierlab.lemmas.bound_check import power_bound
from schreierlab.lemmas.schedule import ProofSchedule, feasible_or_best
from schreierlab.sampling.multiset import GeneratorMultiset, sample_multiset, split_multiset
from schreierlab.sampling.rng import SeededRng

logger = logging.getLogger(__name__)

BLOCK_BUDGET_INEQUALITY = "k/2 + C2*k^(eps^2) <= k"


class TraceMode(Enum):
    LEMMA6 = "lemma6"
    PROP1 = "prop1"


@dataclass(frozen=True)
class GrowthTrace:
    mode: TraceMode
    # |X_0|, |X_1|, ..., one entry per stage
    stages: Tuple[int, ...]
    failure_stage: Optional[int]
    final_size: int
    target: float
    radius: int
    block_size: int
    blocks: int
    epsilon: float
    schedule_feasible: bool
    probability_floor: float
    final_set: PointSet
    seed: Optional[int] = None
    schedule: Optional[ProofSchedule] = None
    inner: Optional["GrowthTrace"] = None

    @property
    def reached_target(self) -> bool:
        return self.final_size >= self.target

    @property
    def certified(self) -> bool:
        """Stage condition failed, so the size bound follows by contraposition"""
        return self.failure_stage is not None

    def to_dict(self) -> dict:
        data = {
            "mode": self.mode.value,
            "stages": list(self.stages),
            "failure_stage": self.failure_stage,
            "final_size": self.final_size,
            "target": self.target,
            "reached_target": self.reached_target,
            "radius": self.radius,
            "block_size": self.block_size,
            "blocks": self.blocks,
            "epsilon": self.epsilon,
            "schedule_feasible": self.schedule_feasible,
            "probability_floor": self.probability_floor,
            "seed": self.seed,
        }
        if self.inner is not None:
            data["inner"] = self.inner.to_dict()
        return data


def _log_threshold(n: int, block: int, d: float) -> float:
    """log of n / block^d"""
    return math.log(n) - d * math.log(block)


def _run_stages(
    instance: BaseAction,
    start: PointSet,
    blocks: List[GeneratorMultiset],
    block_size: int,
    d: float
) -> Tuple[List[int], Optional[int], PointSet]:
    """Apply the blocks in order, noting the first stage entered with |X| > n/b^d"""
    threshold = _log_threshold(instance.degree, block_size, d)
    sizes = [len(start)]
    failure = None
    current = start
    for stage, block in enumerate(blocks, start=1):
        if failure is None and math.log(len(current)) > threshold:
            failure = stage
        current = image_under(instance, current, block)
        sizes.append(len(current))
        logger.debug("Stage %d: |X| = %d", stage, len(current))
    return sizes, failure, current


def _lemma6(
    instance: BaseAction,
    omega: int,
    generators: GeneratorMultiset,
    epsilon: float,
    allow_infeasible: bool,
    seed: Optional[int]
) -> GrowthTrace:
    n = instance.degree
    k = generators.k
    schedule = feasible_or_best(n, k, epsilon, allow_infeasible)
    blocks = split_multiset(generators, [schedule.h] * schedule.D)
    d = 2.0 / epsilon
    sizes, failure, final = _run_stages(instance, PointSet.of(n, [omega]), blocks, schedule.h, d)
    return GrowthTrace(
        mode=TraceMode.LEMMA6,
        stages=tuple(sizes),
        failure_stage=failure,
        final_size=len(final),
        target=n / math.exp(d * math.log(k)),
        radius=schedule.D,
        block_size=schedule.h,
        blocks=schedule.D,
        epsilon=epsilon,
        schedule_feasible=schedule.feasible,
        probability_floor=schedule.probability_floor,
        final_set=final,
        seed=seed,
        schedule=schedule
    )


def prop1_blocks(k: int, epsilon: float) -> Tuple[int, int]:
    """(C2, b): C2 = ceil(6/eps^3) blocks of b = floor(k^(eps^2)) elements"""
    return math.ceil(6.0 / epsilon ** 3), max(1, math.floor(k ** (epsilon ** 2)))


def _prop1(
    instance: BaseAction,
    omega: int,
    generators: GeneratorMultiset,
    epsilon: float,
    allow_infeasible: bool,
    seed: Optional[int]
) -> GrowthTrace:
    n = instance.degree
    k = generators.k
    half = k // 2
    count, block_size = prop1_blocks(k, epsilon)
    feasible = half + count * block_size <= k
    if not feasible:
        if not allow_infeasible:
            raise ScheduleInfeasible(BLOCK_BUDGET_INEQUALITY)
        count = (k - half) // block_size
        logger.warning("Block budget exceeded for k=%d; cutting to %d blocks of %d", k, count, block_size)

    inner = _lemma6(instance, omega, generators.slice(0, half), epsilon, allow_infeasible, seed)
    rest = generators.slice(half, k)
    blocks = split_multiset(rest, [block_size] * count)
    d = 1.0 / (2.0 * epsilon)
    sizes, failure, final = _run_stages(instance, inner.final_set, blocks, block_size, d)

    # product of the stage bounds, without the asymptotic correction factor
    stage_floor = power_bound(1.0 - 2.0 / block_size ** (d - 1.0), count * block_size)
    return GrowthTrace(
        mode=TraceMode.PROP1,
        stages=tuple(sizes),
        failure_stage=failure,
        final_size=len(final),
        target=n / math.exp(epsilon / 2.0 * math.log(k)),
        radius=inner.radius + count,
        block_size=block_size,
        blocks=count,
        epsilon=epsilon,
        schedule_feasible=feasible and inner.schedule_feasible,
        probability_floor=inner.probability_floor * stage_floor,
        final_set=final,
        seed=seed,
        inner=inner
    )


def growth_trace(
    instance: BaseAction,
    omega: int,
    k: int,
    epsilon: float,
    mode: TraceMode,
    rng: Optional[SeededRng] = None,
    generators: Optional[GeneratorMultiset] = None,
    allow_infeasible: bool = False
) -> GrowthTrace:
    """
    Trace the growth of spheres from omega. The multiset is sampled from rng
    unless given; a given multiset must have exactly k elements.
    """
    mode = TraceMode(mode)
    if generators is None:
        if rng is None:
            raise ValueError("growth_trace needs rng or generators")
        generators = sample_multiset(instance, k, rng)
    elif generators.k != k:
        raise InvalidMultisetSize(f"expected {k} generators, got {generators.k}")
    if not 0 <= omega < instance.degree:
        raise PointOutOfRange(f"point {omega} outside [0, {instance.degree})")
    seed = rng.seed if rng is not None else None
    if mode == TraceMode.LEMMA6:
        trace = _lemma6(instance, omega, generators, epsilon, allow_infeasible, seed)
    else:
        if k < 4:
            raise ScheduleInfeasible("k >= 4")
        trace = _prop1(instance, omega, generators, epsilon, allow_infeasible, seed)
    logger.debug("Growth trace %s from %d: %s", mode.value, omega, trace.stages)
    return trace
