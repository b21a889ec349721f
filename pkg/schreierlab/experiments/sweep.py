"""
Scaling sweeps: for every family, degree and trial sample a random multiset,
build its Schreier graph and record the diameter against log n / log k.
"""
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple
import logging
import math
import time
from schreierlab.actions.base_action import BaseAction
from schreierlab.actions.factory import build_action, family_for_degree
from schreierlab.actions.family_spec import FamilyName, FamilySpec
from schreierlab.components.trial_pool import TrialPool
from schreierlab.config.settings import AppConfig
from schreierlab.diameter.diameter import DEFAULT_BUDGET, DEFAULT_PIVOTS, auto_diameter
from schreierlab.errors import SchreierLabError, UsageError
from schreierlab.experiments.k_rule import KRule
from schreierlab.graph.schreier_graph import build_graph
from schreierlab.sampling.multiset import DEFAULT_RETRY_CAP, sample_multiset, sample_set_distinct
from schreierlab.sampling.rng import SeededRng, derive_trial_seed

logger = logging.getLogger(__name__)

CSV_HEADER = (
    "family", "n", "k", "trial", "seed", "connected", "diam_lower", "diam_upper",
    "diam_exact", "covering_radius", "ratio", "elapsed_ms",
)


@dataclass(frozen=True)
class SweepConfig:
    families: Tuple[str, ...]
    n_values: Tuple[int, ...]
    k_rule: KRule
    trials: int = 100
    seed: int = 0
    mode: str = "auto"
    budget: int = DEFAULT_BUDGET
    pivots: int = DEFAULT_PIVOTS
    cutoff_factor: int = 4
    covering: bool = True
    timing: bool = False
    # pairwise distinct generators instead of a multiset
    distinct: bool = False
    retry_cap: int = DEFAULT_RETRY_CAP
    max_workers: Optional[int] = None

    def __post_init__(self):
        if not self.families or not self.n_values:
            raise UsageError("sweep needs at least one family and one n")
        if self.trials < 1:
            raise UsageError(f"trials must be at least 1, got {self.trials}")
        for name in self.families:
            try:
                FamilyName(name)
            except ValueError as e:
                raise UsageError(f"unknown family '{name}'") from e

    @classmethod
    def from_settings(cls, config: AppConfig, families, n_values, **overrides) -> "SweepConfig":
        """Sweep settings from the loaded config, with CLI overrides where given"""
        values = {
            "k_rule": KRule.parse(config.sweep.k_rule),
            "trials": config.sweep.trials,
            "seed": config.sampling.seed,
            "mode": config.diameter.mode,
            "budget": config.diameter.budget,
            "pivots": config.diameter.pivots,
            "cutoff_factor": config.diameter.cutoff_factor,
            "covering": config.sweep.covering,
            "timing": config.sweep.timing,
            "retry_cap": config.sampling.distinct_retry_cap,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(families=tuple(families), n_values=tuple(n_values), **values)


@dataclass(frozen=True)
class ResultRow:
    family: str
    n: int
    k: int
    trial: int
    seed: int
    connected: bool
    diam_lower: Optional[int] = None
    diam_upper: Optional[int] = None
    diam_exact: Optional[int] = None
    covering_radius: Optional[int] = None
    ratio: Optional[float] = None
    elapsed_ms: Optional[float] = None
    # JSON only
    spec: str = ""
    method: str = ""
    cayley_baseline: Optional[float] = None
    error: Optional[str] = field(default=None, compare=False)

    @property
    def sort_key(self):
        return (self.family, self.n, self.trial)

    def csv_fields(self) -> List[str]:
        def cell(value) -> str:
            if value is None:
                return ""
            if isinstance(value, bool):
                return "true" if value else "false"
            if isinstance(value, float):
                return f"{value:.6f}"
            return str(value)
        return [cell(getattr(self, name)) for name in CSV_HEADER]

    def to_dict(self) -> dict:
        data = {name: getattr(self, name) for name in CSV_HEADER}
        data.update(spec=self.spec, method=self.method, cayley_baseline=self.cayley_baseline, error=self.error)
        return data


def diameter_ratio(diameter: int, n: int, k: int) -> float:
    """diameter / (log n / log k)"""
    if diameter == 0:
        return 0.0
    return diameter * math.log(k) / math.log(n)


def cayley_baseline(n: int, k: int) -> Optional[float]:
    """
    Cayley-graph baseline 2(1 + 1/eps) log n / log k with eps read off
    k = (log n)^(1+eps); None when k is below (log n)^1.
    """
    if n < 3 or k < 2:
        return None
    epsilon = math.log(k) / math.log(math.log(n)) - 1.0
    if epsilon <= 0:
        return None
    return 2.0 * (1.0 + 1.0 / epsilon) * math.log(n) / math.log(k)


def run_trial(
    instance: BaseAction,
    family: str,
    k: int,
    trial: int,
    seed: int,
    config: SweepConfig
) -> ResultRow:
    """One row: sample, build, measure. Errors are embedded, never raised."""
    started = time.perf_counter()
    n = instance.degree
    base = dict(family=family, n=n, k=k, trial=trial, seed=seed, spec=str(instance.spec))
    try:
        rng = SeededRng(seed)
        if config.distinct:
            generators = sample_set_distinct(instance, k, rng, config.retry_cap)
        else:
            generators = sample_multiset(instance, k, rng)
        graph = build_graph(instance, generators)
        report = auto_diameter(graph, config.budget, config.pivots, rng.derive(0), config.mode, max_workers=1)
        covering = None
        if config.covering and report.connected:
            covering = graph.covering_radius(0, cutoff=config.cutoff_factor * n)
        row = ResultRow(
            connected=report.connected,
            diam_lower=report.lower,
            diam_upper=report.upper,
            diam_exact=report.exact,
            covering_radius=covering,
            ratio=diameter_ratio(report.upper, n, k) if report.connected else None,
            method=report.method.value,
            cayley_baseline=cayley_baseline(n, k) if instance.is_regular else None,
            **base
        )
    except (SchreierLabError, ValueError, MemoryError) as e:
        logger.warning("Trial %d of %s failed: %s", trial, instance.spec, e)
        row = ResultRow(connected=False, error=str(e), **base)
    if config.timing:
        row = replace(row, elapsed_ms=(time.perf_counter() - started) * 1000.0)
    return row


def run_instance(instance: BaseAction, k: int, config: SweepConfig, cell_seed: int) -> List[ResultRow]:
    """All trials of one instance; trial t uses derive_trial_seed(cell_seed, t)"""
    family = instance.family.value
    tasks = [(t, derive_trial_seed(cell_seed, t)) for t in range(config.trials)]
    with TrialPool(config.max_workers) as pool:
        return pool.map(lambda task: run_trial(instance, family, k, task[0], task[1], config), tasks)


def run_sweep(config: SweepConfig) -> List[ResultRow]:
    """Every cell of the grid, rows sorted by (family, n, trial)"""
    cells: List[Tuple[BaseAction, int, int]] = []
    for family in config.families:
        for n in config.n_values:
            cell_seed = derive_trial_seed(config.seed, len(cells))
            spec: FamilySpec = family_for_degree(family, n)
            instance = build_action(spec)
            k = config.k_rule.k_for(instance.degree)
            cells.append((instance, k, cell_seed))
            logger.debug("Cell %s with k=%d (%s)", spec, k, config.k_rule)

    tasks = [(instance, k, cell_seed, t) for instance, k, cell_seed in cells for t in range(config.trials)]

    def run(task) -> ResultRow:
        instance, k, cell_seed, t = task
        return run_trial(instance, instance.family.value, k, t, derive_trial_seed(cell_seed, t), config)

    with TrialPool(config.max_workers) as pool:
        rows = pool.map(run, tasks)
    rows.sort(key=lambda row: row.sort_key)
    logger.info("Sweep finished: %d rows over %d cells", len(rows), len(cells))
    return rows
