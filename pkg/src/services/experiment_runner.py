"""
Monte Carlo experiment driver.

Every trial is addressed by (cell, trial) and draws its randomness from
streams keyed by those coordinates under the master seed: stream
``(cell, trial, 0)`` generates the graph and ``(cell, trial, 1, retry)``
draws the survey. Results therefore do not depend on the pool size or on
completion order.
"""

import time
from functools import partial
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from src.models.config import ExperimentConfig, SamplingConfig
from src.models.enums import GeneratorModel, JackknifeParameter, TrialStatus
from src.models.graph import TwoLayerGraph
from src.models.observed import ObservedNetwork
from src.models.report import TrialRecord, TruthValues
from src.services.census import motif_census
from src.services.estimators import EstimationPipeline
from src.services.forward_model import harmonic_sum_ratio, poisson_approximation_check
from src.services.generators import generate_single_layer, generate_two_layer
from src.services.graph_ops import degree_moments
from src.services.jackknife import jackknife
from src.services.sampler import conduct_survey
from src.utils.errors import DegenerateSampleError, InferenceError
from src.utils.logger import get_logger
from src.utils.metrics import track_trial
from src.utils.rng import make_rng
from src.utils.settings import get_settings
from src.workers.trial_pool import run_ordered

logger = get_logger(__name__)

GRAPH_STREAM = 0
SURVEY_STREAM = 1


class TrialSpec(NamedTuple):
    cell: int
    trial: int
    node_count: int
    q: float
    budget: int


def work_list(config: ExperimentConfig) -> List[TrialSpec]:
    """All (cell, trial) coordinates in output order."""
    return [
        TrialSpec(cell, trial, node_count, q, budget)
        for cell, (node_count, q, budget) in enumerate(config.sweep.cells())
        for trial in range(config.trials)
    ]


def generate_trial_graph(spec: TrialSpec, config: ExperimentConfig) -> TwoLayerGraph:
    floor = config.generator.weak_degree_floor
    generator = config.generator.model_copy(
        update={
            "node_count": spec.node_count,
            "weak_degree_floor": spec.budget if floor is None else floor,
        }
    )
    rng = make_rng(config.master_seed, spec.cell, spec.trial, GRAPH_STREAM)
    return generate_two_layer(generator, rng)


def measure_truth(graph: TwoLayerGraph) -> TruthValues:
    """Degree moments, census and clustering of the original graph."""
    moments = degree_moments(graph)
    census = motif_census(graph)
    triads = census.triad_total
    return TruthValues(
        N=graph.node_count,
        Ks=moments.ks,
        Kw=moments.kw,
        Kss=moments.kss,
        Ksw=moments.ksw,
        Kww=moments.kww,
        cc=3 * census.triangle_total / triads if triads else None,
        T_s3=census.triangles.t_s3,
        T_s2w=census.triangles.t_s2w,
        T_sw2=census.triangles.t_sw2,
        T_w3=census.triangles.t_w3,
        lam_ss=census.open_triads.l_ss,
        lam_sw=census.open_triads.l_sw,
        lam_ww=census.open_triads.l_ww,
    )


def survey_with_retries(
    graph: TwoLayerGraph, spec: TrialSpec, config: ExperimentConfig
) -> Tuple[ObservedNetwork, int]:
    """
    Survey the graph, redrawing on zero-seed samples.

    Returns:
        (observed network, number of redraws)

    Raises:
        DegenerateSampleError: every allowed redraw came up empty
    """
    sampling = SamplingConfig(
        q=spec.q, budget=spec.budget, insufficient_weak_policy=config.insufficient_weak_policy
    )
    max_retries = get_settings().max_survey_retries
    for retry in range(max_retries + 1):
        rng = make_rng(config.master_seed, spec.cell, spec.trial, SURVEY_STREAM, retry)
        try:
            return conduct_survey(graph, sampling, rng), retry
        except DegenerateSampleError:
            logger.warning("Empty survey redrawn", cell=spec.cell, trial=spec.trial, retry=retry)
    raise DegenerateSampleError(
        f"no seeds after {max_retries + 1} draws", cell=spec.cell, trial=spec.trial
    )


def run_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    """Generate, survey and estimate one trial; data errors are recorded, not raised."""
    started = time.perf_counter()
    record = TrialRecord(
        cell=spec.cell,
        trial=spec.trial,
        node_count=spec.node_count,
        q=spec.q,
        budget=spec.budget,
        model=config.generator.model.value,
    )

    try:
        graph = generate_trial_graph(spec, config)
        record.truth = measure_truth(graph)
        observed, record.retries = survey_with_retries(graph, spec, config)
        record.report = EstimationPipeline(spec.budget, config.flags).run(observed)
    except InferenceError as exc:
        record.status = TrialStatus.FAILED.value
        record.error = exc.code
        logger.warning("Trial failed", cell=spec.cell, trial=spec.trial, error=exc.code)

    record.elapsed = time.perf_counter() - started
    return record


def run_mc_sweep(config: ExperimentConfig, workers: Optional[int] = None) -> List[TrialRecord]:
    """
    Run every trial of every sweep cell.

    Args:
        config: Experiment document
        workers: Pool size; settings default when None

    Returns:
        TrialRecords sorted by (cell, trial)
    """
    specs = work_list(config)
    logger.info(
        "Monte Carlo sweep started",
        cells=len(config.sweep.cells()),
        trials=config.trials,
        master_seed=config.master_seed,
    )

    records = run_ordered(partial(run_trial, config=config), specs, workers)
    records.sort(key=lambda record: (record.cell, record.trial))

    for record in records:
        track_trial(config.kind.value, record.status, record.elapsed, record.retries)

    failed = sum(1 for record in records if record.status != TrialStatus.OK.value)
    logger.info("Monte Carlo sweep finished", rows=len(records), failed=failed)
    return records


# ============================================================================
# Jackknife sweep
# ============================================================================


JACKKNIFE_TARGETS = {JackknifeParameter.N: "N", JackknifeParameter.KS: "Ks"}


def run_jackknife_trial(spec: TrialSpec, config: ExperimentConfig) -> Dict[str, Any]:
    """Jackknife mean, sd and two-sd coverage of the true N and K_s for one trial."""
    started = time.perf_counter()
    row: Dict[str, Any] = {
        "cell": spec.cell,
        "trial": spec.trial,
        "N": spec.node_count,
        "q": spec.q,
        "B": spec.budget,
        "retries": 0,
        "status": TrialStatus.OK.value,
        "error": None,
        "n0": None,
        "failed_subsamples": None,
    }

    try:
        graph = generate_trial_graph(spec, config)
        moments = degree_moments(graph)
        truth = {"N": float(graph.node_count), "Ks": moments.ks}
        observed, row["retries"] = survey_with_retries(graph, spec, config)
        row["n0"] = len(observed.seeds)

        results = jackknife(
            observed,
            spec.budget,
            parameters=list(JACKKNIFE_TARGETS),
            flags=config.flags,
            workers=1,
        )
        row["failed_subsamples"] = max(len(result.failed_seeds) for result in results)
        for result in results:
            name = JACKKNIFE_TARGETS[JackknifeParameter(result.parameter)]
            row[f"true_{name}"] = truth[name]
            row[f"{name}_hat"] = result.h_full
            row[f"{name}_jk_mean"] = result.h_bar
            row[f"{name}_jk_sd"] = result.sd
            row[f"{name}_covered"] = abs(truth[name] - result.h_bar) <= 2 * result.sd
    except InferenceError as exc:
        row["status"] = TrialStatus.FAILED.value
        row["error"] = exc.code
        logger.warning("Jackknife trial failed", cell=spec.cell, trial=spec.trial, error=exc.code)

    row["elapsed"] = time.perf_counter() - started
    return row


JACKKNIFE_COLUMNS = (
    "cell",
    "trial",
    "N",
    "q",
    "B",
    "retries",
    "status",
    "error",
    "n0",
    "failed_subsamples",
    "true_N",
    "N_hat",
    "N_jk_mean",
    "N_jk_sd",
    "N_covered",
    "true_Ks",
    "Ks_hat",
    "Ks_jk_mean",
    "Ks_jk_sd",
    "Ks_covered",
)


def run_jackknife_sweep(
    config: ExperimentConfig, workers: Optional[int] = None
) -> List[Dict[str, Any]]:
    """Jackknife rows sorted by (cell, trial)."""
    specs = work_list(config)
    rows = run_ordered(partial(run_jackknife_trial, config=config), specs, workers)
    rows.sort(key=lambda row: (row["cell"], row["trial"]))
    for row in rows:
        track_trial(config.kind.value, row["status"], row["elapsed"], row["retries"])
    logger.info("Jackknife sweep finished", rows=len(rows))
    return rows


# ============================================================================
# Approximation checks
# ============================================================================

APPROX_COLUMNS = ("family", "network", "N", "mean_degree", "Y", "Y_hat", "ratio", "relative_error")


# Stream key per family, independent of the requested family list
FAMILY_STREAM_KEYS = {family: key for key, family in enumerate(GeneratorModel)}


class ApproxSpec(NamedTuple):
    family: GeneratorModel
    network: int


def run_approx_network(spec: ApproxSpec, config: ExperimentConfig) -> Dict[str, Any]:
    """Y_hat / Y for one generated single-layer network."""
    generator = config.generator.model_copy(
        update={"model": spec.family, "node_count": config.approx.size}
    )
    rng = make_rng(config.master_seed, FAMILY_STREAM_KEYS[spec.family], spec.network)
    graph = generate_single_layer(generator, rng)
    check = harmonic_sum_ratio(graph)
    return {
        "family": spec.family.value,
        "network": spec.network,
        "N": graph.node_count,
        "mean_degree": float(graph.degrees().mean()),
        "Y": check["Y"],
        "Y_hat": check["Y_hat"],
        "ratio": check["ratio"],
        "relative_error": abs(check["ratio"] - 1.0),
    }


def run_approx_check(
    config: ExperimentConfig, workers: Optional[int] = None
) -> List[Dict[str, Any]]:
    """
    Mean-degree approximation error across network families.

    Returns:
        One row per generated network, grouped by family in config order
    """
    specs = [
        ApproxSpec(family, network)
        for family in config.approx.families
        for network in range(config.approx.count)
    ]
    rows = run_ordered(partial(run_approx_network, config=config), specs, workers)
    worst = {}
    for row in rows:
        worst[row["family"]] = max(worst.get(row["family"], 0.0), row["relative_error"])
    logger.info("Approximation check finished", networks=len(rows), worst_relative_error=worst)
    return rows


def run_poisson_check(ks: float, q: float, draws: int, master_seed: int) -> Dict[str, float]:
    """Poisson-degree expansion check on a dedicated stream."""
    result = poisson_approximation_check(ks, q, draws, make_rng(master_seed, 0))
    logger.info("Poisson check", **result)
    return result


def summarize_coverage(rows: List[Dict[str, Any]]) -> Dict[str, float]:
    """Share of successful jackknife trials whose interval covers the truth."""
    usable = [row for row in rows if row["status"] == TrialStatus.OK.value]
    if not usable:
        return {}
    return {
        f"{name}_coverage": float(np.mean([bool(row[f"{name}_covered"]) for row in usable]))
        for name in JACKKNIFE_TARGETS.values()
    }
