"""
Method-of-moments estimators.

Stages, in order: closed-form first moments (N, q, K_w), least-squares
strong degree, coefficient tables, observed census, triangle inversion,
open-triad inversion, triad totals, second moments. Clustering and the
crude baselines are computed alongside.
"""

from typing import Callable, Dict, List, NamedTuple, Optional, Tuple, TypeVar

from scipy.optimize import minimize_scalar

from src.models.census import (
    MotifCensus,
    OpenTriadCounts,
    TriadTotals,
    TriangleCounts,
    combine_triads,
)
from src.models.coefficients import CoefficientTables
from src.models.config import ExperimentFlags
from src.models.enums import PipelineStage
from src.models.observed import ObservedNetwork, SurveyStatistics
from src.models.report import CrudeEstimates, EstimateReport
from src.services.census import motif_census
from src.services.coefficients import coefficient_tables
from src.services.graph_ops import collapse, degree_moments, global_clustering
from src.services.sampler import observables
from src.utils.errors import (
    DegenerateSampleError,
    InferenceError,
    NoTriadsError,
    PipelineStageError,
    SingularDenominatorError,
    UnidentifiableError,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Smallest probability range sum an inversion may divide by
IDENTIFIABILITY_FLOOR = 1e-12

# Argument tolerance of the bounded K_s search
STRONG_DEGREE_XATOL = 1e-6

T = TypeVar("T")


class FirstMoments(NamedTuple):
    N_hat: float
    q_hat: float
    Kw_hat: float


class SecondMoments(NamedTuple):
    Kss_hat: float
    Ksw_hat: float
    Kww_hat: float


def first_moment_estimates(
    stats: SurveyStatistics, budget: int, literal_denominator: bool = False
) -> FirstMoments:
    """
    Closed-form N, q and K_w.

    Args:
        stats: Observed (or expected) survey statistics
        budget: Fixed-choice budget B
        literal_denominator: Use (2Bn0 - 2m1w - m0w) as the K_w denominator
            instead of the form consistent with E[m0w]

    Raises:
        DegenerateSampleError: B*n0 <= m1w, so q would be 0
        SingularDenominatorError: the K_w denominator is not positive
    """
    named = budget * stats.n0
    kept = named - stats.m1w
    if kept <= 0:
        raise DegenerateSampleError(
            "every weak naming leaves the seed set", n0=stats.n0, m1w=stats.m1w, budget=budget
        )

    q_hat = kept / named
    n_hat = budget * stats.n0**2 / kept

    if literal_denominator:
        denominator = 2 * named - 2 * stats.m1w - stats.m0w
    else:
        denominator = 2 * (kept - stats.m0w)
    if denominator <= 0:
        raise SingularDenominatorError(
            "K_w denominator is not positive",
            denominator=denominator,
            m0w=stats.m0w,
            literal_denominator=literal_denominator,
        )

    return FirstMoments(N_hat=n_hat, q_hat=q_hat, Kw_hat=budget * kept / denominator)


def strong_degree_objective(
    stats: SurveyStatistics, n_hat: float, q_hat: float
) -> Callable[[float], float]:
    """Sum of squared residuals of the three strong-layer moment equations."""
    p = 1.0 - q_hat

    def objective(ks: float) -> float:
        return (
            (stats.m0s - 0.5 * q_hat * q_hat * n_hat * ks) ** 2
            + (stats.m1s - q_hat * p * n_hat * ks) ** 2
            + (stats.n1s - n_hat * p * (1.0 - p**ks)) ** 2
        )

    return objective


def estimate_strong_degree(stats: SurveyStatistics, n_hat: float, q_hat: float) -> float:
    """
    Least-squares K_s on [0, N_hat].

    At q_hat = 1 every strong link is seen between seeds and K_s = 2 m0s / n0.
    """
    if stats.m0s == 0 and stats.m1s == 0 and stats.n1s == 0:
        return 0.0
    if q_hat >= 1.0:
        return 2.0 * stats.m0s / stats.n0

    objective = strong_degree_objective(stats, n_hat, q_hat)
    guess = min(max(stats.m1s / (q_hat * (1.0 - q_hat) * n_hat), 0.0), n_hat)

    candidates = [guess]
    # The wide search can miss a narrow basin; a second search brackets the guess
    for upper in (n_hat, min(n_hat, 2.0 * guess + 1.0)):
        result = minimize_scalar(
            objective, bounds=(0.0, upper), method="bounded", options={"xatol": STRONG_DEGREE_XATOL}
        )
        candidates.append(float(result.x))

    ks_hat = min(candidates, key=objective)
    logger.debug("Strong degree fitted", guess=guess, ks_hat=ks_hat, residual=objective(ks_hat))
    return ks_hat


def _invert(count: float, probability: float, label: str, floor: float) -> float:
    if probability <= floor:
        raise UnidentifiableError(
            f"{label} is unidentifiable: observation probability {probability:.3g}",
            motif=label,
            probability=probability,
        )
    return count / probability


def estimate_triangles(
    observed: MotifCensus, tables: CoefficientTables, floor: float = IDENTIFIABILITY_FLOOR
) -> TriangleCounts:
    """Scale observed triangles by their probability of being observed as triangles."""
    seen = observed.triangles
    return TriangleCounts(
        t_s3=_invert(seen.t_s3, tables.rho_sum(1, 2), "T_s3", floor),
        t_s2w=_invert(seen.t_s2w, tables.rho_sum(3, 7), "T_s2w", floor),
        t_sw2=_invert(seen.t_sw2, tables.rho_sum(8, 17), "T_sw2", floor),
        t_w3=_invert(seen.t_w3, tables.rho_sum(18, 26), "T_w3", floor),
    )


def estimate_open_triads(
    observed: MotifCensus,
    triangles: TriangleCounts,
    tables: CoefficientTables,
    clamp: bool = True,
    warnings: Optional[List[str]] = None,
    floor: float = IDENTIFIABILITY_FLOOR,
) -> OpenTriadCounts:
    """
    Remove triangle-born open triads from the observed counts, then scale
    by the probability that an open triad stays open and observed.

    Negative results are clamped to zero (when ``clamp``) and flagged.
    """
    seen = observed.open_triads
    t = triangles
    estimates = {
        "l_ss": _invert(
            seen.l_ss - 3 * t.t_s3 * tables.pi_at(3) - t.t_s2w * tables.pi_sum(1, 4),
            tables.phi_sum(1, 4),
            "lambda_ss",
            floor,
        ),
        "l_sw": _invert(
            seen.l_sw - 2 * t.t_s2w * tables.pi_at(6) - 2 * t.t_sw2 * tables.pi_sum(5, 13),
            tables.phi_sum(5, 13),
            "lambda_sw",
            floor,
        ),
        "l_ww": _invert(
            seen.l_ww - t.t_sw2 * tables.pi_at(14) - 3 * t.t_w3 * tables.pi_sum(14, 24),
            tables.phi_sum(14, 24),
            "lambda_ww",
            floor,
        ),
    }

    for name, value in estimates.items():
        if value < 0:
            if warnings is not None:
                warnings.append(f"{name}:negative:{value:.6g}")
            logger.warning("Negative open-triad estimate", motif=name, value=value, clamped=clamp)
            if clamp:
                estimates[name] = 0.0

    return OpenTriadCounts(**estimates)


def total_triads(open_triads: OpenTriadCounts, triangles: TriangleCounts) -> TriadTotals:
    return combine_triads(open_triads, triangles)


def second_moments(tau: TriadTotals, n_hat: float, ks_hat: float, kw_hat: float) -> SecondMoments:
    """Invert tau_ss ~ N (K_ss - K_s) / 2, tau_sw ~ N K_sw, tau_ww ~ N (K_ww - K_w) / 2."""
    if n_hat <= 0:
        raise SingularDenominatorError("N_hat must be positive", n_hat=n_hat)
    return SecondMoments(
        Kss_hat=2.0 * tau.tau_ss / n_hat + ks_hat,
        Ksw_hat=tau.tau_sw / n_hat,
        Kww_hat=2.0 * tau.tau_ww / n_hat + kw_hat,
    )


def estimated_clustering(
    triangles: TriangleCounts, tau: TriadTotals, warnings: Optional[List[str]] = None
) -> float:
    """
    Global clustering 3 * sum(T) / sum(tau), clamped to [0, 1].

    Raises:
        NoTriadsError: sum(tau) <= 0
    """
    triads = sum(tau)
    if triads <= 0:
        raise NoTriadsError("estimated triad total is not positive", triads=triads)

    coefficient = 3.0 * sum(triangles) / triads
    if not 0.0 <= coefficient <= 1.0:
        clamped = min(max(coefficient, 0.0), 1.0)
        if warnings is not None:
            warnings.append(f"cc_hat:clamped:{coefficient:.6g}")
        logger.warning("Clustering estimate out of range", value=coefficient, clamped=clamped)
        coefficient = clamped
    return coefficient


def crude_estimates(observed: ObservedNetwork) -> CrudeEstimates:
    """
    Clustering and degree moments of the observed network, uncorrected.

    Raises:
        NoTriadsError: the observed network has no triad
    """
    graph, _ = observed.to_graph()
    cc_crude = global_clustering(collapse(graph))
    return CrudeEstimates(
        cc_crude=cc_crude, moments=degree_moments(graph), node_count=graph.node_count
    )


def _first_stage(stage: PipelineStage, compute: Callable[[], T]) -> T:
    try:
        return compute()
    except InferenceError as exc:
        raise PipelineStageError(stage.value, exc)


class EstimationPipeline:
    """Runs the estimation stages for one fixed-choice budget and flag set.

    First-moment failures raise ``PipelineStageError``. Later failures are
    recorded as ``stage:<name>:<code>`` warnings and leave the affected
    fields empty.
    """

    def __init__(self, budget: int, flags: Optional[ExperimentFlags] = None):
        self.budget = budget
        self.flags = flags or ExperimentFlags()

    @classmethod
    def for_network(
        cls,
        observed: ObservedNetwork,
        budget: Optional[int] = None,
        flags: Optional[ExperimentFlags] = None,
    ) -> "EstimationPipeline":
        """Pipeline using ``budget`` or else the budget stored on ``observed``."""
        budget = budget if budget is not None else observed.budget
        if budget is None:
            raise ValueError("fixed-choice budget unknown for this observed network")
        return cls(budget, flags)

    def first_moments(self, stats: SurveyStatistics) -> Tuple[FirstMoments, float]:
        """(N, q, K_w) and K_s; either failure aborts the pipeline."""
        first = _first_stage(
            PipelineStage.FIRST_MOMENTS,
            lambda: first_moment_estimates(
                stats, self.budget, literal_denominator=self.flags.literal_kw_denominator
            ),
        )
        ks_hat = _first_stage(
            PipelineStage.STRONG_DEGREE,
            lambda: estimate_strong_degree(stats, first.N_hat, first.q_hat),
        )
        return first, ks_hat

    def _second_moments(
        self,
        first: FirstMoments,
        ks_hat: float,
        observed_census: MotifCensus,
        warnings: List[str],
    ) -> Dict[str, float]:
        fields: Dict[str, float] = {}
        stage = PipelineStage.COEFFICIENT_TABLES
        try:
            tables = coefficient_tables(first.Kw_hat, first.q_hat, self.budget)
            warnings.extend(tables.warnings)

            stage = PipelineStage.TRIANGLES
            triangles = estimate_triangles(observed_census, tables)
            fields.update(
                T_s3=triangles.t_s3,
                T_s2w=triangles.t_s2w,
                T_sw2=triangles.t_sw2,
                T_w3=triangles.t_w3,
            )

            stage = PipelineStage.OPEN_TRIADS
            open_triads = estimate_open_triads(
                observed_census,
                triangles,
                tables,
                clamp=self.flags.clamp_negative,
                warnings=warnings,
            )
            fields.update(
                lam_ss=open_triads.l_ss, lam_sw=open_triads.l_sw, lam_ww=open_triads.l_ww
            )

            stage = PipelineStage.TRIAD_TOTALS
            tau = total_triads(open_triads, triangles)
            fields.update(tau_ss=tau.tau_ss, tau_sw=tau.tau_sw, tau_ww=tau.tau_ww)

            stage = PipelineStage.SECOND_MOMENTS
            fields.update(second_moments(tau, first.N_hat, ks_hat, first.Kw_hat)._asdict())

            stage = PipelineStage.CLUSTERING
            fields["cc_hat"] = estimated_clustering(triangles, tau, warnings)
        except InferenceError as exc:
            warnings.append(f"stage:{stage.value}:{exc.code}")
            logger.warning(
                "Pipeline stage skipped", stage=stage.value, error=exc.code, reason=exc.message
            )
        return fields

    def from_statistics(
        self,
        stats: SurveyStatistics,
        observed_census: MotifCensus,
        crude: Optional[CrudeEstimates] = None,
        warnings: Optional[List[str]] = None,
    ) -> EstimateReport:
        """Run every stage on precomputed statistics and census."""
        warnings = list(warnings or [])
        first, ks_hat = self.first_moments(stats)

        fields: Dict[str, float] = {
            "N_hat": first.N_hat,
            "q_hat": first.q_hat,
            "Kw_hat": first.Kw_hat,
            "Ks_hat": ks_hat,
        }
        fields.update(self._second_moments(first, ks_hat, observed_census, warnings))
        if crude is not None:
            fields["cc_crude"] = crude.cc_crude

        return EstimateReport(warnings=warnings, **fields)

    def run(self, observed: ObservedNetwork) -> EstimateReport:
        """
        Estimate every network characteristic from one observed network.

        Raises:
            PipelineStageError: first-moment or strong-degree stage failed
        """
        stats = observables(observed)
        census = motif_census(observed)

        warnings: List[str] = []
        crude: Optional[CrudeEstimates] = None
        try:
            crude = crude_estimates(observed)
        except InferenceError as exc:
            warnings.append(f"stage:{PipelineStage.CRUDE.value}:{exc.code}")

        report = self.from_statistics(stats, census, crude=crude, warnings=warnings)
        logger.debug(
            "Pipeline finished",
            n0=stats.n0,
            N_hat=report.N_hat,
            q_hat=report.q_hat,
            warnings=len(report.warnings),
        )
        return report


def estimate_from_statistics(
    stats: SurveyStatistics,
    observed_census: MotifCensus,
    budget: int,
    flags: Optional[ExperimentFlags] = None,
    crude: Optional[CrudeEstimates] = None,
    warnings: Optional[List[str]] = None,
) -> EstimateReport:
    """Run the estimation stages on precomputed statistics and census."""
    return EstimationPipeline(budget, flags).from_statistics(
        stats, observed_census, crude=crude, warnings=warnings
    )


def full_pipeline(
    observed: ObservedNetwork, budget: Optional[int] = None, flags: Optional[ExperimentFlags] = None
) -> EstimateReport:
    """
    Estimate every network characteristic from one observed network.

    Args:
        observed: Sampled network
        budget: Fixed-choice budget (defaults to the one stored on ``observed``)
        flags: Estimator switches (K_w denominator, clamping)

    Raises:
        PipelineStageError: first-moment or strong-degree stage failed
    """
    return EstimationPipeline.for_network(observed, budget, flags).run(observed)
