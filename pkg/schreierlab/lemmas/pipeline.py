"""
The diameter argument run as a program on one random instance.

1. growth: two independent multisets A1, A2 of k/4 elements grow a large
   sphere around w, A1 forward and A2^-1 backward (prop1 mode, eps/2).
2. fill: fresh multisets B1, B2 of ceil(4 m log n) elements, m = n/|X|,
   push each sphere onto all of Omega one step later.
3. doubling: every x reaches w in t2+1 steps and w reaches every y in
   t1+1 steps in the graph on A1+B1+A2+B2, so its diameter is at most
   (t1+1) + (t2+1).
"""
from dataclasses import dataclass
from typing import Optional
import logging
import math
from schreierlab.actions.base_action import BaseAction
from schreierlab.diameter.diameter import DEFAULT_BUDGET, DEFAULT_PIVOTS, auto_diameter
from schreierlab.diameter.report import DiameterReport
from schreierlab.errors import PipelineStageFailed, SchreierLabError
from schreierlab.graph.point_set import PointSet
from schreierlab.graph.schreier_graph import build_graph, image_under
from schreierlab.lemmas.trace import GrowthTrace, TraceMode, growth_trace
from schreierlab.sampling.multiset import GeneratorMultiset, invert_multiset, sample_multiset
from schreierlab.sampling.rng import SeededRng

logger = logging.getLogger(__name__)

DEFAULT_MAX_FILL = 1024


@dataclass(frozen=True)
class PipelineRecord:
    growth: GrowthTrace
    reverse_growth: GrowthTrace
    fill_radius: int
    reverse_fill_radius: int
    fill_count: int
    reverse_fill_count: int
    doubling_diameter_bound: int
    consumed: int
    k: int
    budget_ok: bool
    precondition_met: bool
    diameter: DiameterReport

    @property
    def cross_check_ok(self) -> bool:
        """The certificate can never be below a true distance"""
        if not self.diameter.connected:
            return False
        return self.doubling_diameter_bound >= self.diameter.lower

    def to_dict(self) -> dict:
        return {
            "growth": self.growth.to_dict(),
            "reverse_growth": self.reverse_growth.to_dict(),
            "fill_radius": self.fill_radius,
            "reverse_fill_radius": self.reverse_fill_radius,
            "fill_count": self.fill_count,
            "reverse_fill_count": self.reverse_fill_count,
            "doubling_diameter_bound": self.doubling_diameter_bound,
            "consumed": self.consumed,
            "k": self.k,
            "budget_ok": self.budget_ok,
            "precondition_met": self.precondition_met,
            "diameter": self.diameter.to_dict(),
            "cross_check_ok": self.cross_check_ok,
        }


def fill_count(n: int, x_size: int, cap: int) -> int:
    """ceil(4 m log n) with m = n/|X|, capped"""
    return max(1, min(cap, math.ceil(4.0 * n / x_size * math.log(n))))


def _fill(instance: BaseAction, sphere: PointSet, elements: GeneratorMultiset, side: str) -> None:
    if not image_under(instance, sphere, elements).is_full():
        raise PipelineStageFailed("fill", f"{side} sphere of size {len(sphere)} did not cover Omega")


def theorem_pipeline(
    instance: BaseAction,
    omega: int,
    k: int,
    epsilon: float,
    rng: SeededRng,
    allow_infeasible: bool = False,
    max_fill_per_side: int = DEFAULT_MAX_FILL,
    budget: int = DEFAULT_BUDGET,
    pivot_count: int = DEFAULT_PIVOTS
) -> PipelineRecord:
    """Growth, fill and doubling on fresh random elements, with a diameter cross-check"""
    n = instance.degree
    precondition_met = n < 2 or k >= math.log(n) ** (1.0 + epsilon)
    if not precondition_met:
        logger.info("k=%d is below (log n)^(1+eps) for n=%d", k, n)

    quarter = k // 4
    forward_elements = sample_multiset(instance, quarter, rng.derive(0)) if quarter else None
    backward_elements = sample_multiset(instance, quarter, rng.derive(1)) if quarter else None
    if forward_elements is None:
        raise PipelineStageFailed("growth", f"k/4 = {quarter} leaves no growth elements")
    try:
        forward = growth_trace(instance, omega, quarter, epsilon / 2.0, TraceMode.PROP1,
                               generators=forward_elements, allow_infeasible=allow_infeasible)
        backward = growth_trace(instance, omega, quarter, epsilon / 2.0, TraceMode.PROP1,
                                generators=invert_multiset(instance, backward_elements),
                                allow_infeasible=allow_infeasible)
    except (SchreierLabError, ValueError) as e:
        raise PipelineStageFailed("growth", str(e)) from e

    forward_fill = sample_multiset(instance, fill_count(n, forward.final_size, max_fill_per_side), rng.derive(2))
    backward_fill = sample_multiset(instance, fill_count(n, backward.final_size, max_fill_per_side), rng.derive(3))
    _fill(instance, forward.final_set, forward_fill, "forward")
    _fill(instance, backward.final_set, invert_multiset(instance, backward_fill), "backward")

    fill_radius = forward.radius + 1
    reverse_fill_radius = backward.radius + 1
    certificate = fill_radius + reverse_fill_radius
    consumed = 2 * quarter + forward_fill.k + backward_fill.k

    union = forward_elements.concat(forward_fill, backward_elements, backward_fill)
    graph = build_graph(instance, union)
    report = auto_diameter(graph, budget, pivot_count, rng.derive(4))
    if not report.connected:
        raise PipelineStageFailed("fill", "graph on the union multiset is disconnected")

    record = PipelineRecord(
        growth=forward,
        reverse_growth=backward,
        fill_radius=fill_radius,
        reverse_fill_radius=reverse_fill_radius,
        fill_count=forward_fill.k,
        reverse_fill_count=backward_fill.k,
        doubling_diameter_bound=certificate,
        consumed=consumed,
        k=k,
        budget_ok=consumed <= k,
        precondition_met=precondition_met,
        diameter=report
    )
    if not record.cross_check_ok:
        logger.error("Certificate %d below diameter lower bound %s", certificate, report.lower)
    return record
