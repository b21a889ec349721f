"""
One-step growth of a set X under k random elements, and its explicit form
|X^A| >= sqrt(k)|X| for small X.
"""
from typing import Optional
import logging
import math
from schreierlab.actions.base_action import BaseAction
from schreierlab.errors import InvalidMultisetSize, PreconditionUnmet
from schreierlab.graph.point_set import PointSet
from schreierlab.graph.schreier_graph import image_under
from schreierlab.lemmas.bound_check import DEFAULT_MARGIN, BoundCheck, count_events, power_bound
from schreierlab.sampling.multiset import sample_multiset
from schreierlab.sampling.rng import SeededRng

logger = logging.getLogger(__name__)


def _image_size(instance: BaseAction, x: PointSet, k: int, rng: SeededRng) -> int:
    return len(image_under(instance, x, sample_multiset(instance, k, rng)))


def _precondition(met: bool, condition: str, allow_unmet: bool) -> None:
    if met:
        return
    if not allow_unmet:
        raise PreconditionUnmet(condition)
    logger.warning("Running with unmet precondition %s", condition)


def one_step_growth_check(
    instance: BaseAction,
    x: PointSet,
    k: int,
    r: float,
    s: float,
    trials: int,
    rng: SeededRng,
    allow_unmet: bool = False,
    margin: float = DEFAULT_MARGIN,
    max_workers: Optional[int] = None
) -> BoundCheck:
    """
    Frequency of |X^A| >= k(|X| - r) for A ~ mu_G(k), against (1 - 1/s)^k.

    The bound needs n >= k s |X|^2 / r.
    """
    if k < 1:
        raise InvalidMultisetSize(f"multiset size must be at least 1, got {k}")
    if r <= 0 or s <= 0:
        raise ValueError("r and s must be positive")
    n = instance.degree
    condition = "n >= k*s*|X|^2/r"
    met = n * r >= k * s * len(x) ** 2
    _precondition(met, condition, allow_unmet)

    threshold = k * (len(x) - r)
    hits = count_events(lambda trial_rng: _image_size(instance, x, k, trial_rng) >= threshold, trials, rng, max_workers)
    return BoundCheck(
        empirical=hits / trials,
        analytic_bound=power_bound(1.0 - 1.0 / s, k),
        trials=trials,
        margin=margin,
        precondition_met=met,
        precondition="" if met else condition
    )


def explicit_growth_check(
    instance: BaseAction,
    x: PointSet,
    k: int,
    d: float,
    trials: int,
    rng: SeededRng,
    allow_unmet: bool = False,
    margin: float = DEFAULT_MARGIN,
    max_workers: Optional[int] = None
) -> BoundCheck:
    """
    Frequency of |X^A| >= sqrt(k)|X| against (1 - 2/k^(d-1))^k.

    Needs k >= 4, d >= 2 and |X| <= n/k^d.
    """
    if k < 1:
        raise InvalidMultisetSize(f"multiset size must be at least 1, got {k}")
    n = instance.degree
    failed = []
    if k < 4:
        failed.append("k >= 4")
    if d < 2:
        failed.append("d >= 2")
    if float(d).is_integer():
        too_large = len(x) * k ** int(d) > n
    else:
        # fractional d, compared in logs
        too_large = len(x) > 0 and math.log(len(x)) > math.log(n) - d * math.log(k)
    if too_large:
        failed.append("|X| <= n/k^d")
    met = not failed
    condition = " and ".join(failed)
    _precondition(met, condition, allow_unmet)

    threshold = math.sqrt(k) * len(x)
    hits = count_events(lambda trial_rng: _image_size(instance, x, k, trial_rng) >= threshold, trials, rng, max_workers)
    return BoundCheck(
        empirical=hits / trials,
        analytic_bound=power_bound(1.0 - 2.0 / k ** (d - 1), k),
        trials=trials,
        margin=margin,
        precondition_met=met,
        precondition=condition
    )
