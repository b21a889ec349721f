"""
Exact directed diameter by all-pairs BFS, and certified lower/upper bounds
from a few pivots when all-pairs is out of budget.
"""
from typing import Optional, Tuple
import logging
import numpy as np
from schreierlab.components.trial_pool import TrialPool
from schreierlab.diameter.report import DiameterMethod, DiameterReport
from schreierlab.errors import BudgetExceeded, Disconnected
from schreierlab.graph.schreier_graph import UNREACHED, SchreierGraph
from schreierlab.sampling.rng import SeededRng

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 2_000_000_000
DEFAULT_PIVOTS = 4

# reach rows per all-pairs block are capped at this many cells
BLOCK_CELLS = 1 << 22


def all_pairs_work(graph: SchreierGraph) -> int:
    """
    Table gathers of all-pairs BFS, bounded from above. Each level gathers an
    n x n reach block per generator, and a block runs at most
    diameter + 1 levels, with diameter <= ecc_out(0) + ecc_in(0). A
    disconnected graph is charged n levels.
    """
    n = graph.degree
    forward = graph.root_distances()
    if np.any(forward == UNREACHED):
        levels = n
    else:
        levels = int(forward.max()) + int(graph.reverse().root_distances().max()) + 1
    return n * n * graph.k * levels


def _block_eccentricity(inverse_tables: np.ndarray, n: int, sources: np.ndarray) -> int:
    """Largest eccentricity among `sources`, one BFS row per source"""
    rows = np.arange(sources.size)
    reach = np.zeros((sources.size, n), dtype=bool)
    reach[rows, sources] = True
    frontier = reach.copy()
    level = 0
    while True:
        step = np.zeros_like(frontier)
        for inverse in inverse_tables:
            # y is reached when its preimage is in the frontier
            step |= frontier[:, inverse]
        step &= ~reach
        if not step.any():
            return level
        reach |= step
        frontier = step
        level += 1


def exact_diameter(
    graph: SchreierGraph,
    budget: int = DEFAULT_BUDGET,
    max_workers: Optional[int] = None
) -> DiameterReport:
    """max over all points of the forward eccentricity"""
    if not graph.is_connected():
        raise Disconnected(f"graph on {graph.degree} points with k={graph.k} is not connected")
    work = all_pairs_work(graph)
    if work > budget:
        raise BudgetExceeded(work, budget)

    n = graph.degree
    inverse_tables = graph.reverse().distinct_tables()
    block = max(1, min(n, BLOCK_CELLS // n))
    blocks = [np.arange(start, min(start + block, n)) for start in range(0, n, block)]
    with TrialPool(max_workers) as pool:
        eccentricities = pool.map(lambda sources: _block_eccentricity(inverse_tables, n, sources), blocks)
    diameter = max(eccentricities)
    logger.debug("All-pairs diameter %d over %d blocks", diameter, len(blocks))
    return DiameterReport(
        connected=True,
        method=DiameterMethod.ALL_PAIRS,
        lower=diameter,
        upper=diameter,
        exact=diameter
    )


def _pivots(n: int, pivot_count: int, rng: SeededRng) -> Tuple[int, ...]:
    pivots = [0]
    for _ in range(pivot_count - 1):
        pivots.append(rng.integers(n))
    return tuple(dict.fromkeys(pivots))


def pivot_bounds(graph: SchreierGraph, pivot_count: int, rng: SeededRng) -> DiameterReport:
    """
    For any pivot w, d(x, y) <= d(x, w) + d(w, y), so the diameter is at most
    the backward plus the forward eccentricity of w. Every eccentricity seen
    along the way is a true distance and so a lower bound.
    """
    if pivot_count < 1:
        raise ValueError("pivot_count must be at least 1")
    if not graph.is_connected():
        raise Disconnected(f"graph on {graph.degree} points with k={graph.k} is not connected")

    reverse = graph.reverse()
    pivots = _pivots(graph.degree, pivot_count, rng)
    lower = 0
    upper = None
    for pivot in pivots:
        forward = graph.root_distances() if pivot == 0 else graph.distances(pivot)
        backward = reverse.root_distances() if pivot == 0 else reverse.distances(pivot)
        forward_ecc = int(forward.max())
        backward_ecc = int(backward.max())
        candidate = forward_ecc + backward_ecc
        upper = candidate if upper is None else min(upper, candidate)

        # double sweep from the farthest points on either side
        far_target = int(np.argmax(forward))
        far_source = int(np.argmax(backward))
        swept = (
            forward_ecc,
            backward_ecc,
            graph.eccentricity(far_source),
            reverse.eccentricity(far_target),
        )
        lower = max(lower, *(e for e in swept if e is not None))
        logger.debug("Pivot %d: fwd %d, bwd %d, bounds [%d, %d]", pivot, forward_ecc, backward_ecc, lower, upper)

    exact = lower if lower == upper else None
    return DiameterReport(
        connected=True,
        method=DiameterMethod.PIVOT_BOUNDS,
        lower=lower,
        upper=upper,
        exact=exact,
        pivots_used=len(pivots)
    )


def auto_diameter(
    graph: SchreierGraph,
    budget: int = DEFAULT_BUDGET,
    pivot_count: int = DEFAULT_PIVOTS,
    rng: Optional[SeededRng] = None,
    mode: str = "auto",
    max_workers: Optional[int] = None
) -> DiameterReport:
    """
    Exact diameter when all-pairs fits the budget, pivot bounds otherwise.

    mode "exact" forces all-pairs (and may raise BudgetExceeded), "bounds"
    forces pivots. Disconnection is reported, never raised.
    """
    if mode not in ("auto", "exact", "bounds"):
        raise ValueError(f"unknown diameter mode {mode}")
    use_exact = mode == "exact" or (mode == "auto" and all_pairs_work(graph) <= budget)
    if not graph.is_connected():
        return DiameterReport.disconnected(DiameterMethod.ALL_PAIRS if use_exact else DiameterMethod.PIVOT_BOUNDS)
    if use_exact:
        return exact_diameter(graph, budget, max_workers)
    return pivot_bounds(graph, pivot_count, rng or SeededRng(0))
