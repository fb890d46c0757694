"""
Run metrics for experiment and estimation commands.

Tracks:
- Trials by experiment and status
- Survey redraws after zero-seed samples
- Per-trial wall time
- Failed leave-one-out subsamples

Metrics live on a private registry and are written in Prometheus text
format when a command is given ``--metrics-out``.
"""

from pathlib import Path
from typing import Union

from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

REGISTRY = CollectorRegistry()


# ============================================================================
# Trial Metrics
# ============================================================================

trials_counter = Counter(
    "tiesurvey_trials_total",
    "Total number of experiment trials",
    ["experiment", "status"],  # mc_sweep/approx_check/jackknife_sweep, ok/failed
    registry=REGISTRY,
)

survey_retries_counter = Counter(
    "tiesurvey_survey_retries_total",
    "Surveys redrawn because no seed was selected",
    registry=REGISTRY,
)

trial_duration_histogram = Histogram(
    "tiesurvey_trial_duration_seconds",
    "Wall time of a single trial (generate, survey, estimate)",
    buckets=[0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 60.0],
    registry=REGISTRY,
)

# ============================================================================
# Jackknife Metrics
# ============================================================================

leave_one_out_failures_counter = Counter(
    "tiesurvey_leave_one_out_failures_total",
    "Leave-one-out subsamples excluded because an estimator failed",
    ["parameter"],
    registry=REGISTRY,
)


def track_trial(experiment: str, status: str, duration: float, retries: int = 0) -> None:
    """Record one finished trial."""
    trials_counter.labels(experiment=experiment, status=status).inc()
    trial_duration_histogram.observe(duration)
    if retries:
        survey_retries_counter.inc(retries)


def track_leave_one_out_failure(parameter: str) -> None:
    leave_one_out_failures_counter.labels(parameter=parameter).inc()


def write_metrics(path: Union[str, Path]) -> None:
    """Write the registry to ``path`` in Prometheus text format."""
    write_to_textfile(str(path), REGISTRY)
