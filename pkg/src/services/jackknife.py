"""
Leave-one-respondent-out jackknife.

Each subsample is the observed network with one respondent's namings
physically removed, re-estimated from scratch. First-moment parameters only
need the survey statistics, so the census is skipped unless a second-moment
parameter is requested.
"""

from functools import partial
from typing import Dict, List, Optional, Sequence

from src.models.config import ExperimentFlags
from src.models.enums import FIRST_MOMENT_PARAMETERS, JackknifeParameter
from src.models.observed import ObservedNetwork
from src.models.report import JackknifeResult
from src.services.estimators import (
    EstimationPipeline,
    estimate_strong_degree,
    first_moment_estimates,
)
from src.services.sampler import observables, remove_respondent
from src.utils.errors import InferenceError, TooFewSeedsError
from src.utils.logger import get_logger
from src.utils.metrics import track_leave_one_out_failure
from src.workers.trial_pool import run_ordered

logger = get_logger(__name__)

SECOND_MOMENT_PARAMETERS = (
    JackknifeParameter.KSS,
    JackknifeParameter.KSW,
    JackknifeParameter.KWW,
    JackknifeParameter.CC,
)

Estimates = Dict[str, Optional[float]]


def jackknife_variance(values: Sequence[float]) -> float:
    """((n - 1) / n) * sum_i (h_i - mean)^2."""
    n = len(values)
    if n == 0:
        return 0.0
    mean = sum(values) / n
    return (n - 1) / n * sum((value - mean) ** 2 for value in values)


def default_parameters(flags: Optional[ExperimentFlags] = None) -> List[JackknifeParameter]:
    parameters = list(FIRST_MOMENT_PARAMETERS)
    if flags is not None and flags.second_moment_jackknife:
        parameters.extend(SECOND_MOMENT_PARAMETERS)
    return parameters


def subsample_estimates(
    observed: ObservedNetwork,
    budget: int,
    flags: ExperimentFlags,
    needs_census: bool,
) -> Estimates:
    """Estimates on one (already reduced) observed network."""
    if needs_census:
        report = EstimationPipeline(budget, flags).run(observed)
        return {
            parameter.value: getattr(report, parameter.value) for parameter in JackknifeParameter
        }

    stats = observables(observed)
    first = first_moment_estimates(stats, budget, literal_denominator=flags.literal_kw_denominator)
    return {
        JackknifeParameter.N.value: first.N_hat,
        JackknifeParameter.Q.value: first.q_hat,
        JackknifeParameter.KW.value: first.Kw_hat,
        JackknifeParameter.KS.value: estimate_strong_degree(stats, first.N_hat, first.q_hat),
    }


def _leave_one_out(
    respondent: int,
    observed: ObservedNetwork,
    budget: int,
    flags: ExperimentFlags,
    needs_census: bool,
) -> Optional[Estimates]:
    try:
        reduced = remove_respondent(observed, respondent)
        return subsample_estimates(reduced, budget, flags, needs_census)
    except InferenceError as exc:
        logger.warning("Leave-one-out subsample failed", respondent=respondent, error=exc.code)
        return None


def jackknife(
    observed: ObservedNetwork,
    budget: Optional[int] = None,
    parameters: Optional[Sequence[JackknifeParameter]] = None,
    flags: Optional[ExperimentFlags] = None,
    workers: Optional[int] = None,
) -> List[JackknifeResult]:
    """
    Jackknife variance for the selected report fields.

    Args:
        observed: Full observed network
        budget: Fixed-choice budget (defaults to the one on ``observed``)
        parameters: Fields to resample; first moments unless the
            second-moment flag is set
        flags: Estimator switches
        workers: Leave-one-out pool size

    Returns:
        One JackknifeResult per parameter with a full-sample value

    Raises:
        TooFewSeedsError: fewer than two respondents, or fewer than two
            usable subsamples for a parameter
    """
    flags = flags or ExperimentFlags()
    budget = budget if budget is not None else observed.budget
    if budget is None:
        raise ValueError("fixed-choice budget unknown for this observed network")
    selected = [JackknifeParameter(p) for p in (parameters or default_parameters(flags))]

    seeds = sorted(observed.seeds)
    if len(seeds) < 2:
        raise TooFewSeedsError("jackknife needs at least two respondents", n0=len(seeds))

    needs_census = any(not parameter.is_first_moment for parameter in selected)
    full = subsample_estimates(observed, budget, flags, needs_census)

    evaluate = partial(
        _leave_one_out, observed=observed, budget=budget, flags=flags, needs_census=needs_census
    )
    subsamples = run_ordered(evaluate, seeds, workers)

    results: List[JackknifeResult] = []
    for parameter in selected:
        name = parameter.value
        if full.get(name) is None:
            logger.warning("Jackknife parameter unavailable on full sample", parameter=name)
            continue

        values: List[float] = []
        failed: List[int] = []
        for seed, estimates in zip(seeds, subsamples):
            value = None if estimates is None else estimates.get(name)
            if value is None:
                failed.append(seed)
                track_leave_one_out_failure(name)
            else:
                values.append(float(value))

        if len(values) < 2:
            raise TooFewSeedsError(
                f"only {len(values)} usable leave-one-out estimates for {name}", parameter=name
            )

        results.append(
            JackknifeResult(
                parameter=name,
                h_full=float(full[name]),  # type: ignore[arg-type]
                h_bar=sum(values) / len(values),
                variance=jackknife_variance(values),
                leave_one_out_values=values,
                failed_seeds=failed,
            )
        )

    logger.info(
        "Jackknife finished",
        respondents=len(seeds),
        parameters=[result.parameter for result in results],
        failures=sum(1 for estimates in subsamples if estimates is None),
    )
    return results
