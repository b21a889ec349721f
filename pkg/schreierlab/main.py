import argparse
import json
import logging
import math
import os
import re
import sys
from typing import List, Optional, Sequence
import yaml
from schreierlab.actions.base_action import BaseAction
from schreierlab.actions.factory import build_action
from schreierlab.actions.family_spec import FAMILY_DESCRIPTIONS, FamilyName, grammar
from schreierlab.config.environment import RuntimeSettings
from schreierlab.config.loader import load_config
from schreierlab.config.settings import AppConfig
from schreierlab.errors import InvalidFamilyParams, SchreierLabError, UsageError
from schreierlab.experiments import k_rule
from schreierlab.experiments.emit import emit_csv, emit_json, format_csv, format_json
from schreierlab.experiments.plot import emit_plot
from schreierlab.experiments.sweep import ResultRow, SweepConfig, run_instance, run_sweep
from schreierlab.graph.point_set import PointSet
from schreierlab.lemmas.double_count import double_count_check
from schreierlab.lemmas.fill import fill_check
from schreierlab.lemmas.growth import explicit_growth_check, one_step_growth_check
from schreierlab.lemmas.pipeline import theorem_pipeline
from schreierlab.lemmas.schedule import feasible_or_best, proof_schedule
from schreierlab.lemmas.trace import TraceMode, growth_trace
from schreierlab.sampling.rng import SeededRng, derive_trial_seed

logger = logging.getLogger(__name__)

DEBUG = RuntimeSettings().debug

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so usage errors map to exit 1"""
    def error(self, message):
        raise UsageError(message)


class ModuleFilter(logging.Filter):
    def filter(self, record):
        return record.name.startswith('schreierlab')


def setup_logging(verbose: bool) -> None:
    level = logging.DEBUG if DEBUG or verbose else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr)

    root_logger = logging.getLogger()
    filter_module = ModuleFilter()
    for handler in root_logger.handlers:
        handler.addFilter(filter_module)


def usage_grammar() -> str:
    lines = ["families:"]
    lines += [f"  {grammar(family)}" for family in FamilyName]
    lines.append(f"k rules: {k_rule.GRAMMAR}")
    return "\n".join(lines)


def parse_big_int(text: str) -> int:
    """Integers like 4096, 2^1000 or 10**6"""
    match = re.fullmatch(r"\s*(\d+)\s*(?:(?:\^|\*\*)\s*(\d+))?\s*", text)
    if not match:
        raise argparse.ArgumentTypeError(f"not an integer: '{text}'")
    base = int(match.group(1))
    return base ** int(match.group(2)) if match.group(2) else base


def parse_int_list(text: str) -> List[int]:
    try:
        return [parse_big_int(part) for part in text.split(",") if part.strip()]
    except argparse.ArgumentTypeError as e:
        raise argparse.ArgumentTypeError(f"bad integer list '{text}'") from e


def build_parser() -> UsageArgumentParser:
    parser = UsageArgumentParser(
        prog="schreier-lab",
        description="Diameters of random Schreier graphs and checks of their growth lemmas"
    )
    parser.add_argument('--config', default="config.yaml", help='YAML config file')
    parser.add_argument('--verbose', action='store_true', help='Enable debug logging')
    commands = parser.add_subparsers(dest="command", required=True)

    def instance_options(sub):
        sub.add_argument('--family', required=True, help='Family spec, e.g. cyclic:m=10')
        sub.add_argument('--k', type=int, required=True, help='Number of random generators')
        sub.add_argument('--seed', type=int, help='Master seed')
        sub.add_argument('--trials', type=int, help='Number of trials')

    def output_options(sub):
        sub.add_argument('--out', help='Output path (stdout when omitted)')
        sub.add_argument('--format', choices=("csv", "json"), default=None, help='Output format')

    def set_options(sub):
        sub.add_argument('--x', type=parse_int_list, help='Comma separated points of X')
        sub.add_argument('--x-size', type=int, help='Use X = {0, ..., N-1}')

    commands.add_parser('info', help='List the group-action families')

    diameter = commands.add_parser('diameter', help='Diameter of random Schreier graphs of one instance')
    instance_options(diameter)
    diameter.add_argument('--mode', choices=("exact", "bounds", "auto"), help='Diameter method')
    diameter.add_argument('--budget', type=int, help='All-pairs work budget')
    diameter.add_argument('--distinct', action='store_true', help='Sample k pairwise distinct generators')
    output_options(diameter)

    sweep = commands.add_parser('sweep', help='Diameter scaling over a grid of families and degrees')
    sweep.add_argument('--family', required=True, help='Comma separated family names')
    sweep.add_argument('--n', type=parse_int_list, required=True, help='Comma separated degrees')
    sweep.add_argument('--k', type=int, help='Fixed k, short for --k-rule fixed:K')
    sweep.add_argument('--k-rule', help=f'k as a function of n: {k_rule.GRAMMAR}')
    sweep.add_argument('--trials', type=int, help='Trials per cell')
    sweep.add_argument('--seed', type=int, help='Master seed')
    sweep.add_argument('--mode', choices=("exact", "bounds", "auto"), help='Diameter method')
    sweep.add_argument('--budget', type=int, help='All-pairs work budget')
    sweep.add_argument('--distinct', action='store_true', help='Sample k pairwise distinct generators')
    sweep.add_argument('--plot', help='Write an SVG plot of the ratio column')
    output_options(sweep)

    trace = commands.add_parser('growth-trace', help='Stage-by-stage sphere growth')
    instance_options(trace)
    trace.add_argument('--epsilon', type=float, required=True)
    trace.add_argument('--mode', choices=[m.value for m in TraceMode], default=TraceMode.LEMMA6.value)
    trace.add_argument('--omega', type=int, default=0, help='Base point')
    trace.add_argument('--allow-unmet-preconditions', action='store_true')
    trace.add_argument('--out', help='Output path (stdout when omitted)')

    pipeline = commands.add_parser('pipeline', help='Growth, fill and doubling certificate')
    instance_options(pipeline)
    pipeline.add_argument('--epsilon', type=float, required=True)
    pipeline.add_argument('--omega', type=int, default=0, help='Base point')
    pipeline.add_argument('--budget', type=int, help='All-pairs work budget for the cross-check')
    pipeline.add_argument('--allow-unmet-preconditions', action='store_true')
    pipeline.add_argument('--out', help='Output path (stdout when omitted)')

    lemma = commands.add_parser('lemma', help='Lemma verifiers')
    lemmas = lemma.add_subparsers(dest="lemma", required=True)

    double = lemmas.add_parser('double-count', help='Exact double counting over G')
    double.add_argument('--family', required=True)
    set_options(double)
    double.add_argument('--y', type=parse_int_list, required=True, help='Comma separated points of Y')
    double.add_argument('--r', type=float, help='Also check the random conjugate bound with this r')
    double.add_argument('--s', type=float, help='s of the random conjugate bound')
    double.add_argument('--budget', type=int, help='Largest group order to enumerate')

    one_step = lemmas.add_parser('one-step', help='One-step growth |X^A| >= k(|X| - r)')
    instance_options(one_step)
    set_options(one_step)
    one_step.add_argument('--r', type=float, required=True)
    one_step.add_argument('--s', type=float, required=True)
    one_step.add_argument('--allow-unmet-preconditions', action='store_true')

    explicit = lemmas.add_parser('explicit-growth', help='Explicit growth |X^A| >= sqrt(k)|X|')
    instance_options(explicit)
    set_options(explicit)
    explicit.add_argument('--d', type=float, required=True)
    explicit.add_argument('--allow-unmet-preconditions', action='store_true')

    fill = lemmas.add_parser('fill', help='Cover probability of X^B = Omega')
    instance_options(fill)
    set_options(fill)

    schedule = commands.add_parser('schedule', help='Growth schedule arithmetic, no group is built')
    schedule.add_argument('--n', type=parse_big_int, required=True, help='Degree, e.g. 4096 or 2^1000')
    schedule.add_argument('--k', type=int, required=True)
    schedule.add_argument('--epsilon', type=float, required=True)
    schedule.add_argument('--C', type=float, help='Schedule constant (smallest feasible when omitted)')
    schedule.add_argument('--allow-unmet-preconditions', action='store_true')

    return parser


def point_set(instance: BaseAction, points: Optional[Sequence[int]], size: Optional[int], name: str = "X") -> PointSet:
    if points is None and size is None:
        raise UsageError(f"{name} is required: give --x or --x-size")
    if points is None:
        points = range(size)
    for p in points:
        if not 0 <= p < instance.degree:
            raise UsageError(f"point {p} of {name} outside [0, {instance.degree})")
    return PointSet.of(instance.degree, points)


def write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def dump(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def emit_rows(rows: List[ResultRow], out: Optional[str], output_format: Optional[str]) -> None:
    if output_format is None:
        output_format = "json" if out and out.endswith(".json") else "csv"
    if out is None:
        write_output(format_json(rows) if output_format == "json" else format_csv(rows), None)
    elif output_format == "json":
        emit_json(rows, out)
    else:
        emit_csv(rows, out)


def run_info(args, config: AppConfig) -> int:
    for family in FamilyName:
        print(f"{grammar(family):<24} {FAMILY_DESCRIPTIONS[family]}")
    return EXIT_OK


def _sweep_config(args, config: AppConfig, families, n_values) -> SweepConfig:
    rule = None
    if getattr(args, 'k_rule', None):
        rule = k_rule.KRule.parse(args.k_rule)
    if args.k is not None:
        rule = k_rule.KRule.parse(f"fixed:{args.k}")
    return SweepConfig.from_settings(
        config, families, n_values,
        k_rule=rule,
        trials=args.trials,
        seed=args.seed,
        mode=args.mode,
        budget=args.budget,
        distinct=args.distinct or None,
        max_workers=RuntimeSettings().workers
    )


def run_diameter(args, config: AppConfig) -> int:
    instance = build_action(args.family)
    if args.trials is None:
        args.trials = 1
    sweep_config = _sweep_config(args, config, [instance.family.value], [instance.degree])
    rows = run_instance(instance, args.k, sweep_config, sweep_config.seed)
    emit_rows(rows, args.out, args.format)
    return EXIT_OK


def run_sweep_command(args, config: AppConfig) -> int:
    families = [name.strip() for name in args.family.split(",") if name.strip()]
    sweep_config = _sweep_config(args, config, families, args.n)
    rows = run_sweep(sweep_config)
    emit_rows(rows, args.out, args.format)
    plot_path = args.plot or config.sweep.plot
    if plot_path:
        if len(families) == 1:
            emit_plot(rows, plot_path)
        else:
            for family in families:
                family_path = os.path.join(os.path.dirname(plot_path), f"{family}-{os.path.basename(plot_path)}")
                emit_plot([row for row in rows if row.family == family], family_path)
    return EXIT_OK


def run_growth_trace(args, config: AppConfig) -> int:
    instance = build_action(args.family)
    seed = args.seed if args.seed is not None else config.sampling.seed
    trials = args.trials or 1
    traces = [
        growth_trace(instance, args.omega, args.k, args.epsilon, TraceMode(args.mode),
                     SeededRng(derive_trial_seed(seed, t)),
                     allow_infeasible=args.allow_unmet_preconditions)
        for t in range(trials)
    ]
    first = traces[0]
    result = {
        "mode": first.mode.value,
        "stages": list(first.stages),
        "failure_stage": first.failure_stage,
        "final_size": first.final_size,
        "bound": first.probability_floor,
        "empirical": sum(t.reached_target for t in traces) / trials,
        "trials": trials,
        "seed": seed,
        "target": first.target,
        "traces": [t.to_dict() for t in traces],
    }
    write_output(dump(result), args.out)
    return EXIT_OK


def run_pipeline(args, config: AppConfig) -> int:
    instance = build_action(args.family)
    seed = args.seed if args.seed is not None else config.sampling.seed
    results = []
    for t in range(args.trials or 1):
        trial_seed = derive_trial_seed(seed, t)
        try:
            record = theorem_pipeline(
                instance, args.omega, args.k, args.epsilon, SeededRng(trial_seed),
                allow_infeasible=args.allow_unmet_preconditions,
                max_fill_per_side=config.pipeline.max_fill_per_side,
                budget=args.budget or config.diameter.budget,
                pivot_count=config.diameter.pivots
            )
            results.append({"trial": t, "seed": trial_seed, **record.to_dict()})
        except SchreierLabError as e:
            stage = getattr(e, "stage", None)
            if stage is None:
                raise
            logger.warning("Pipeline trial %d failed at %s: %s", t, stage, e)
            results.append({"trial": t, "seed": trial_seed, "failed_stage": stage, "reason": str(e)})
    write_output(dump(results), args.out)
    return EXIT_OK


def run_lemma(args, config: AppConfig) -> int:
    instance = build_action(args.family)
    if args.lemma == 'double-count':
        x = point_set(instance, args.x, args.x_size)
        y = point_set(instance, args.y, None, name="Y")
        record = double_count_check(instance, x, y, args.budget or config.lemmas.enumeration_budget)
        result = record.to_dict()
        if args.r is not None and args.s is not None:
            bound = record.random_conjugate_bound(args.r, args.s)
            result["conjugate_bound"] = {
                "r": bound.r, "s": bound.s, "heavy_elements": bound.heavy_elements,
                "hypothesis": bound.hypothesis, "degree_bound": bound.degree_bound, "holds": bound.holds,
            }
        write_output(dump(result), None)
        return EXIT_OK if record.equal else EXIT_RUNTIME

    x = point_set(instance, args.x, args.x_size)
    seed = args.seed if args.seed is not None else config.sampling.seed
    trials = args.trials or config.lemmas.trials
    margin = config.lemmas.sigma_margin
    rng = SeededRng(seed)
    workers = RuntimeSettings().workers
    if args.lemma == 'one-step':
        check = one_step_growth_check(instance, x, args.k, args.r, args.s, trials, rng,
                                      args.allow_unmet_preconditions, margin, workers)
        result = check.to_dict()
    elif args.lemma == 'explicit-growth':
        check = explicit_growth_check(instance, x, args.k, args.d, trials, rng,
                                      args.allow_unmet_preconditions, margin, workers)
        result = check.to_dict()
    else:
        record = fill_check(instance, x, args.k, trials, rng, margin,
                            config.lemmas.enumeration_budget, workers)
        result = record.to_dict()
    result["seed"] = seed
    write_output(dump(result), None)
    return EXIT_OK


def run_schedule(args, config: AppConfig) -> int:
    if args.C is not None:
        schedule = proof_schedule(args.n, args.k, args.epsilon, args.C)
    else:
        schedule = feasible_or_best(args.n, args.k, args.epsilon, allow_infeasible=True)
    result = schedule.to_dict()
    result["feasible"] = schedule.feasible
    result["log_n"] = math.log(args.n)
    write_output(dump(result), None)
    return EXIT_OK


HANDLERS = {
    'info': run_info,
    'diameter': run_diameter,
    'sweep': run_sweep_command,
    'growth-trace': run_growth_trace,
    'pipeline': run_pipeline,
    'lemma': run_lemma,
    'schedule': run_schedule,
}


def cli_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; 0 on success, 1 on usage errors, 2 on runtime errors"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"{parser.prog}: {e}\n{usage_grammar()}\n")
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return EXIT_OK if not e.code else EXIT_USAGE

    setup_logging(args.verbose)
    try:
        config = load_config(args.config)
        return HANDLERS[args.command](args, config)
    except (UsageError, InvalidFamilyParams) as e:
        sys.stderr.write(f"{parser.prog}: {e}\n{usage_grammar()}\n")
        return EXIT_USAGE
    except (SchreierLabError, OSError, ValueError, yaml.YAMLError) as e:
        logger.error("%s failed: %s", args.command, e)
        sys.stderr.write(f"{parser.prog}: {e}\n")
        return EXIT_RUNTIME


def main():
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
