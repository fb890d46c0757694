from enum import Enum
from typing import Optional


class Layer(str, Enum):
    """Link layer of a two-layer network."""
    STRONG = "s"
    WEAK = "w"

    @property
    def other(self) -> "Layer":
        return Layer.WEAK if self is Layer.STRONG else Layer.STRONG


class GeneratorModel(str, Enum):
    """Synthetic network family."""
    MODIFIED_WS = "modified_ws"
    HOLME_KIM = "holme_kim"
    BA = "ba"
    RRT = "rrt"

    @classmethod
    def _missing_(cls, value: object) -> Optional["GeneratorModel"]:
        # Short family names used on the command line
        aliases = {"sw": cls.MODIFIED_WS, "hk": cls.HOLME_KIM}
        if isinstance(value, str):
            return aliases.get(value.lower())
        return None


class InsufficientWeakPolicy(str, Enum):
    """What the sampler does when a seed has fewer than B weak ties."""
    ERROR = "error"
    REPORT_ALL = "report_all"


class ExperimentKind(str, Enum):
    MC_SWEEP = "mc_sweep"
    APPROX_CHECK = "approx_check"
    JACKKNIFE_SWEEP = "jackknife_sweep"


class PipelineStage(str, Enum):
    """Stages of the estimation pipeline, in execution order."""
    FIRST_MOMENTS = "first_moments"
    STRONG_DEGREE = "strong_degree"
    COEFFICIENT_TABLES = "coefficient_tables"
    TRIANGLES = "triangles"
    OPEN_TRIADS = "open_triads"
    TRIAD_TOTALS = "triad_totals"
    SECOND_MOMENTS = "second_moments"
    CLUSTERING = "clustering"
    CRUDE = "crude"


class JackknifeParameter(str, Enum):
    """Report fields the jackknife can resample."""
    N = "N_hat"
    Q = "q_hat"
    KS = "Ks_hat"
    KW = "Kw_hat"
    KSS = "Kss_hat"
    KSW = "Ksw_hat"
    KWW = "Kww_hat"
    CC = "cc_hat"

    @property
    def is_first_moment(self) -> bool:
        return self in FIRST_MOMENT_PARAMETERS


FIRST_MOMENT_PARAMETERS = (
    JackknifeParameter.N,
    JackknifeParameter.Q,
    JackknifeParameter.KS,
    JackknifeParameter.KW,
)


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class TrialStatus(str, Enum):
    OK = "ok"
    FAILED = "failed"
