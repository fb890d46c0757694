"""
Command-line entry point.

Exit codes: 0 success, 1 data error (JSON envelope on stderr), 2 usage error.
"""

import argparse
import json
import sys
import tomllib
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from src.models.config import (
    ExperimentConfig,
    ExperimentFlags,
    GeneratorConfig,
    SamplingConfig,
    load_document,
)
from src.models.enums import (
    ExperimentKind,
    GeneratorModel,
    InsufficientWeakPolicy,
    JackknifeParameter,
    OutputFormat,
)
from src.models.graph import TwoLayerGraph
from src.models.report import CSV_COLUMNS, TRIAL_COLUMNS
from src.services.estimators import EstimationPipeline
from src.services.experiment_runner import (
    APPROX_COLUMNS,
    JACKKNIFE_COLUMNS,
    run_approx_check,
    run_jackknife_sweep,
    run_mc_sweep,
    run_poisson_check,
    summarize_coverage,
)
from src.services.generators import generate_single_layer, generate_two_layer
from src.services.graph_io import format_edge_list, read_edge_list, read_survey, survey_to_dict
from src.services.jackknife import default_parameters, jackknife
from src.services.report_aggregator import aggregate_trials
from src.services.result_writer import emit, format_document, format_rows
from src.services.sampler import conduct_survey
from src.utils.errors import InferenceError, TooFewSeedsError
from src.utils.logger import get_logger, set_log_level
from src.utils.metrics import write_metrics
from src.utils.rng import make_rng, validate_seed

logger = get_logger(__name__)


# ============================================================================
# Argument parsing
# ============================================================================


def _seed(value: str) -> int:
    try:
        return validate_seed(int(value))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _families(value: str) -> List[GeneratorModel]:
    try:
        return [GeneratorModel(name.strip()) for name in value.split(",") if name.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parameters(value: str) -> List[JackknifeParameter]:
    names = [name.strip() for name in value.split(",") if name.strip()]
    try:
        parameters = [JackknifeParameter(name) for name in names]
    except ValueError:
        choices = ", ".join(p.value for p in JackknifeParameter)
        raise argparse.ArgumentTypeError(f"unknown parameter in '{value}'; choose from {choices}")
    if not parameters:
        raise argparse.ArgumentTypeError("no parameters given")
    return parameters


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=None, help="Unsigned 64-bit master seed")
    common.add_argument(
        "--config", type=Path, default=None, help="Experiment document (TOML or JSON)"
    )
    common.add_argument("--out", default=None, help="Output path (stdout when omitted)")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=None)
    common.add_argument("--workers", type=int, default=None, help="Worker processes")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("--metrics-out", type=Path, default=None, help="Write run metrics here")

    parser = argparse.ArgumentParser(
        prog="tiesurvey", description="Strong/weak tie survey inference"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate", parents=[common], help="Generate a network")
    generate.add_argument("--model", type=GeneratorModel, default=None)
    generate.add_argument("--nodes", type=int, default=None)
    generate.add_argument("--weak-floor", type=int, default=None)
    generate.set_defaults(handler=cmd_generate)

    sample = commands.add_parser("sample", parents=[common], help="Survey a network")
    _add_sampling_arguments(sample)
    sample.add_argument("--graph", type=Path, required=True, help="Edge-list file")
    sample.set_defaults(handler=cmd_sample)

    estimate = commands.add_parser("estimate", parents=[common], help="Estimate from a survey")
    source = estimate.add_mutually_exclusive_group(required=True)
    source.add_argument("--survey", type=Path, help="Survey JSON")
    source.add_argument("--graph", type=Path, help="Edge-list file to survey first")
    _add_sampling_arguments(estimate)
    _add_estimator_arguments(estimate)
    estimate.add_argument("--no-jackknife", action="store_true")
    estimate.set_defaults(handler=cmd_estimate)

    mc = commands.add_parser("mc", parents=[common], help="Monte Carlo sweep")
    mc.add_argument("--trials", type=int, default=None)
    mc.add_argument("--timings", action="store_true", help="Add an elapsed column")
    _add_estimator_arguments(mc)
    mc.set_defaults(handler=cmd_mc)

    jack = commands.add_parser(
        "jackknife", parents=[common], help="Jackknife a survey or run a sweep"
    )
    jack.add_argument("--survey", type=Path, default=None)
    jack.add_argument("--trials", type=int, default=None)
    jack.add_argument(
        "--parameters", type=_parameters, default=None, help="Comma-separated report fields"
    )
    _add_estimator_arguments(jack)
    jack.set_defaults(handler=cmd_jackknife)

    approx = commands.add_parser("approx-check", parents=[common], help="Approximation checks")
    approx.add_argument("--families", type=_families, default=None, help="e.g. sw,hk,ba,rrt")
    approx.add_argument("--count", type=int, default=None)
    approx.add_argument("--size", type=int, default=None)
    approx.add_argument("--poisson", action="store_true", help="Poisson-degree expansion check")
    approx.add_argument("--ks", type=float, default=15.0)
    approx.add_argument("--q", type=float, default=0.05)
    approx.add_argument("--draws", type=int, default=100_000)
    approx.set_defaults(handler=cmd_approx_check)

    report = commands.add_parser("report", parents=[common], help="Aggregate a trial CSV")
    report.add_argument("trials", type=Path, help="Trial CSV from mc or approx-check")
    report.set_defaults(handler=cmd_report)

    return parser


def _add_sampling_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=float, default=None, help="Seed probability")
    parser.add_argument("--budget", "-B", type=int, default=None, help="Weak-tie budget B")
    parser.add_argument(
        "--policy",
        choices=[p.value for p in InsufficientWeakPolicy],
        default=None,
        help="Seeds with fewer than B weak ties",
    )


def _add_estimator_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--literal-kw-denominator", action="store_true", default=None)
    parser.add_argument("--no-clamp", action="store_true")
    parser.add_argument("--second-moment-jackknife", action="store_true")


# ============================================================================
# Shared helpers
# ============================================================================


def _experiment(
    args: argparse.Namespace, kind: Optional[ExperimentKind] = None
) -> ExperimentConfig:
    """Experiment document with command-line overrides applied."""
    document: Dict[str, Any] = load_document(args.config) if args.config else {}
    if kind is not None and args.config is None:
        document["kind"] = kind.value
    config = ExperimentConfig.model_validate(document)

    updates: Dict[str, Any] = {}
    if args.seed is not None:
        updates["master_seed"] = args.seed
    if getattr(args, "trials", None) is not None:
        updates["trials"] = args.trials
    flags = _flags(args, config.flags)
    updates["flags"] = flags
    return ExperimentConfig.model_validate({**config.model_dump(), **updates})


def _flags(args: argparse.Namespace, base: Optional[ExperimentFlags] = None) -> ExperimentFlags:
    flags = (base or ExperimentFlags()).model_copy()
    if getattr(args, "literal_kw_denominator", None):
        flags.literal_kw_denominator = True
    if getattr(args, "no_clamp", False):
        flags.clamp_negative = False
    if getattr(args, "second_moment_jackknife", False):
        flags.second_moment_jackknife = True
    return flags


def _sampling(args: argparse.Namespace, config: ExperimentConfig) -> SamplingConfig:
    return SamplingConfig(
        q=args.q if args.q is not None else config.sweep.q_values[0],
        budget=args.budget if args.budget is not None else config.sweep.budgets[0],
        rng_seed=args.seed if args.seed is not None else config.master_seed,
        insufficient_weak_policy=args.policy or config.insufficient_weak_policy,
    )


def _format(args: argparse.Namespace, default: OutputFormat) -> OutputFormat:
    if args.format:
        return OutputFormat(args.format)
    if args.out and str(args.out).endswith(".json"):
        return OutputFormat.JSON
    if args.out and str(args.out).endswith(".csv"):
        return OutputFormat.CSV
    return default


def _write_error(document: Dict[str, Any]) -> None:
    sys.stderr.write(json.dumps(document, default=str) + "\n")


# ============================================================================
# Commands
# ============================================================================


def cmd_generate(args: argparse.Namespace) -> int:
    """Write an edge list; single-layer families go to the weak layer."""
    config = _experiment(args)
    seed = args.seed if args.seed is not None else config.master_seed
    updates: Dict[str, Any] = {"rng_seed": seed}
    if args.model is not None:
        updates["model"] = args.model
    if args.nodes is not None:
        updates["node_count"] = args.nodes
    if args.weak_floor is not None:
        updates["weak_degree_floor"] = args.weak_floor
    generator = GeneratorConfig.model_validate({**config.generator.model_dump(), **updates})

    rng = make_rng(generator.rng_seed)
    if generator.model is GeneratorModel.MODIFIED_WS:
        graph = generate_two_layer(generator, rng)
    else:
        single = generate_single_layer(generator, rng)
        graph = TwoLayerGraph.from_edges(single.node_count, [], single.edge_array())

    emit(format_edge_list(graph), args.out)
    logger.info(
        "Graph written",
        model=generator.model.value,
        nodes=graph.node_count,
        edges=graph.edge_count,
    )
    return 0


def cmd_sample(args: argparse.Namespace) -> int:
    config = _experiment(args)
    sampling = _sampling(args, config)
    graph = read_edge_list(args.graph)
    observed = conduct_survey(graph, sampling, make_rng(sampling.rng_seed))
    emit(format_document(survey_to_dict(observed)), args.out)
    return 0


def cmd_estimate(args: argparse.Namespace) -> int:
    config = _experiment(args)
    flags = config.flags

    if args.survey is not None:
        observed = read_survey(args.survey)
        budget = observed.budget
    else:
        sampling = _sampling(args, config)
        observed = conduct_survey(read_edge_list(args.graph), sampling, make_rng(sampling.rng_seed))
        budget = sampling.budget

    report = EstimationPipeline.for_network(observed, budget, flags).run(observed)
    if not args.no_jackknife:
        try:
            results = jackknife(observed, budget, default_parameters(flags), flags, args.workers)
            report.jackknife = {result.parameter: result for result in results}
        except TooFewSeedsError as exc:
            report.warnings.append(f"jackknife:{exc.code}")
            logger.warning("Jackknife skipped", reason=exc.message)

    fmt = _format(args, OutputFormat.JSON)
    if fmt is OutputFormat.JSON:
        emit(format_document(report.to_json_dict()), args.out)
    else:
        row = report.to_row()
        columns = list(CSV_COLUMNS)
        for name, result in (report.jackknife or {}).items():
            row[f"{name}_jk_mean"] = result.h_bar
            row[f"{name}_jk_sd"] = result.sd
            columns.extend([f"{name}_jk_mean", f"{name}_jk_sd"])
        emit(format_rows([row], fmt, columns), args.out)
    return 0


def cmd_mc(args: argparse.Namespace) -> int:
    config = _experiment(args, ExperimentKind.MC_SWEEP)
    records = run_mc_sweep(config, args.workers)
    columns = list(TRIAL_COLUMNS) + (["elapsed"] if args.timings else [])
    rows = [record.to_row(include_timing=args.timings) for record in records]
    emit(format_rows(rows, _format(args, OutputFormat.CSV), columns), args.out or config.output)
    return 0


def cmd_jackknife(args: argparse.Namespace) -> int:
    if args.survey is not None:
        flags = _flags(args)
        observed = read_survey(args.survey)
        parameters: Sequence[JackknifeParameter] = args.parameters or default_parameters(flags)
        results = jackknife(observed, observed.budget, parameters, flags, args.workers)
        rows = [
            {
                "parameter": result.parameter,
                "estimate": result.h_full,
                "mean": result.h_bar,
                "variance": result.variance,
                "sd": result.sd,
                "failed": len(result.failed_seeds),
            }
            for result in results
        ]
        emit(format_rows(rows, _format(args, OutputFormat.CSV)), args.out)
        return 0

    config = _experiment(args, ExperimentKind.JACKKNIFE_SWEEP)
    rows = run_jackknife_sweep(config, args.workers)
    logger.info("Jackknife coverage", **summarize_coverage(rows))
    fmt = _format(args, OutputFormat.CSV)
    emit(format_rows(rows, fmt, JACKKNIFE_COLUMNS), args.out or config.output)
    return 0


def cmd_approx_check(args: argparse.Namespace) -> int:
    config = _experiment(args, ExperimentKind.APPROX_CHECK)
    fmt = _format(args, OutputFormat.CSV)

    if args.poisson:
        result = run_poisson_check(args.ks, args.q, args.draws, config.master_seed)
        emit(format_rows([result], fmt), args.out)
        return 0

    overrides = {"families": args.families, "count": args.count, "size": args.size}
    approx = config.approx.model_copy(
        update={key: value for key, value in overrides.items() if value is not None}
    )
    config = config.model_copy(update={"approx": approx})
    rows = run_approx_check(config, args.workers)
    emit(format_rows(rows, fmt, APPROX_COLUMNS), args.out or config.output)
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    summary = aggregate_trials(args.trials)
    rows = summary.to_dict(orient="records")
    emit(format_rows(rows, _format(args, OutputFormat.CSV), list(summary.columns)), args.out)
    return 0


# ============================================================================
# Entry point
# ============================================================================


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.log_level:
        set_log_level(args.log_level)

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        status = handler(args)
    except InferenceError as exc:
        _write_error(exc.to_dict())
        return 1
    except ValidationError as exc:
        _write_error(
            {
                "error": "invalid_config",
                "message": "configuration failed validation",
                "details": {"errors": exc.errors(include_url=False)},
            }
        )
        return 1
    except (OSError, tomllib.TOMLDecodeError, json.JSONDecodeError) as exc:
        _write_error({"error": "io_error", "message": str(exc), "details": {}})
        return 1

    if args.metrics_out:
        write_metrics(args.metrics_out)
    return status


if __name__ == "__main__":
    sys.exit(main())
