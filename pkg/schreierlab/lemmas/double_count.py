"""
Double counting of the pairs (y, g) with y in X^g and y in Y: every point is
hit by exactly |G|/n elements from each point of X, so the sum over G of
|X^g & Y| is (|G|/n)|X||Y|.
"""
from dataclasses import dataclass, field
from typing import Dict
import logging
import numpy as np
from schreierlab.actions.base_action import BaseAction
from schreierlab.errors import OrderUnknown
from schreierlab.graph.point_set import PointSet

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_BUDGET = 1_000_000


@dataclass(frozen=True)
class ConjugateBound:
    """If at least |G|/s elements give |X^g & Y| >= r then n <= |X||Y|s/r"""
    r: float
    s: float
    heavy_elements: int
    hypothesis: bool
    degree_bound: float
    holds: bool


@dataclass(frozen=True)
class DoubleCountRecord:
    lhs_sum: int
    rhs: int
    group_order: int
    stabilizer_order: int
    x_size: int
    y_size: int
    degree: int
    # intersection size -> number of elements g
    histogram: Dict[int, int] = field(default_factory=dict)

    @property
    def equal(self) -> bool:
        return self.lhs_sum == self.rhs

    def random_conjugate_bound(self, r: float, s: float) -> ConjugateBound:
        if r <= 0 or s <= 0:
            raise ValueError("r and s must be positive")
        heavy = sum(count for size, count in self.histogram.items() if size >= r)
        hypothesis = heavy * s >= self.group_order
        degree_bound = self.x_size * self.y_size * s / r
        return ConjugateBound(
            r=r,
            s=s,
            heavy_elements=heavy,
            hypothesis=hypothesis,
            degree_bound=degree_bound,
            holds=not hypothesis or self.degree <= degree_bound
        )

    def to_dict(self) -> dict:
        return {
            "lhs_sum": self.lhs_sum,
            "rhs": self.rhs,
            "equal": self.equal,
            "group_order": self.group_order,
            "stabilizer_order": self.stabilizer_order,
            "histogram": {str(size): count for size, count in sorted(self.histogram.items())},
        }


def double_count_check(
    instance: BaseAction,
    x: PointSet,
    y: PointSet,
    budget: int = DEFAULT_ENUMERATION_BUDGET
) -> DoubleCountRecord:
    """Enumerate G and compare sum |X^g & Y| with (|G|/n)|X||Y|"""
    if instance.group_order is None:
        raise OrderUnknown(f"order of {instance.spec} does not fit a machine word")
    elements = instance.enumerate_group(budget)
    x_points = x.indices()
    counts = np.zeros(len(elements), dtype=np.int64)
    if x_points.size:
        for i, g in enumerate(elements):
            counts[i] = np.count_nonzero(y.mask[instance.act_many(g, x_points)])

    sizes, frequencies = np.unique(counts, return_counts=True)
    histogram = {int(size): int(freq) for size, freq in zip(sizes, frequencies)}
    stabilizer = instance.stabilizer_order
    record = DoubleCountRecord(
        lhs_sum=int(counts.sum()),
        rhs=stabilizer * len(x) * len(y),
        group_order=instance.group_order,
        stabilizer_order=stabilizer,
        x_size=len(x),
        y_size=len(y),
        degree=instance.degree,
        histogram=histogram
    )
    if not record.equal:
        logger.warning("Double count mismatch on %s: %d != %d", instance.spec, record.lhs_sum, record.rhs)
    return record
