"""Result types of the estimation pipeline and the jackknife."""

import math
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from src.models.graph import DegreeMoments

# Fixed column order of one serialized report row
CSV_COLUMNS = (
    "N_hat",
    "q_hat",
    "Ks_hat",
    "Kw_hat",
    "Kss_hat",
    "Ksw_hat",
    "Kww_hat",
    "T_s3",
    "T_s2w",
    "T_sw2",
    "T_w3",
    "lam_ss",
    "lam_sw",
    "lam_ww",
    "tau_ss",
    "tau_sw",
    "tau_ww",
    "cc_hat",
    "cc_crude",
    "warnings",
)


class CrudeEstimates(BaseModel):
    """Statistics of the observed network taken at face value."""

    cc_crude: float = Field(ge=0, le=1)
    moments: DegreeMoments
    node_count: int


class JackknifeResult(BaseModel):
    """Leave-one-respondent-out variance of one estimate."""

    parameter: str
    h_full: float
    h_bar: float
    variance: float = Field(ge=0)
    leave_one_out_values: List[float]
    failed_seeds: List[int] = Field(default_factory=list)

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance)

    def summary(self) -> Dict[str, float]:
        return {"estimate": self.h_full, "mean": self.h_bar, "sd": self.sd}


class EstimateReport(BaseModel):
    """Everything the pipeline infers from one observed network.

    Second-moment fields stay ``None`` when their stage could not run; the
    reason is listed in ``warnings``.
    """

    N_hat: float = Field(gt=0)
    q_hat: float = Field(gt=0, le=1)
    Ks_hat: float = Field(ge=0)
    Kw_hat: float
    Kss_hat: Optional[float] = None
    Ksw_hat: Optional[float] = None
    Kww_hat: Optional[float] = None

    T_s3: Optional[float] = None
    T_s2w: Optional[float] = None
    T_sw2: Optional[float] = None
    T_w3: Optional[float] = None
    lam_ss: Optional[float] = None
    lam_sw: Optional[float] = None
    lam_ww: Optional[float] = None
    tau_ss: Optional[float] = None
    tau_sw: Optional[float] = None
    tau_ww: Optional[float] = None

    cc_hat: Optional[float] = None
    cc_crude: Optional[float] = None

    warnings: List[str] = Field(default_factory=list)
    jackknife: Optional[Dict[str, JackknifeResult]] = None

    @model_validator(mode="after")
    def check_triad_identities(self) -> "EstimateReport":
        """Each tau equals its open triads plus the triangle-born triads."""
        identities = (
            ("tau_ss", self.tau_ss, (self.lam_ss, self.T_s3, self.T_s2w), (1, 3, 1)),
            ("tau_sw", self.tau_sw, (self.lam_sw, self.T_s2w, self.T_sw2), (1, 2, 2)),
            ("tau_ww", self.tau_ww, (self.lam_ww, self.T_w3, self.T_sw2), (1, 3, 1)),
        )
        for name, total, parts, weights in identities:
            if total is None or any(part is None for part in parts):
                continue
            expected = sum(w * p for w, p in zip(weights, parts))  # type: ignore[operator]
            if not math.isclose(total, expected, rel_tol=1e-9, abs_tol=1e-9):
                raise ValueError(f"{name} inconsistent with open triads and triangles")
        return self

    def to_row(self) -> Dict[str, Any]:
        """One flat CSV row in ``CSV_COLUMNS`` order."""
        values = self.model_dump(exclude={"jackknife"})
        row = {column: values[column] for column in CSV_COLUMNS}
        row["warnings"] = ";".join(self.warnings)
        return row

    def to_json_dict(self) -> Dict[str, Any]:
        """Flat JSON object; jackknife results condensed to estimate/mean/sd."""
        document = self.model_dump(exclude={"jackknife"})
        if self.jackknife is not None:
            document["jackknife"] = {
                name: result.summary() for name, result in self.jackknife.items()
            }
        return document


class TruthValues(BaseModel):
    """Ground truth measured on a generated graph."""

    N: int
    Ks: float
    Kw: float
    Kss: float
    Ksw: float
    Kww: float
    cc: Optional[float] = None
    T_s3: int
    T_s2w: int
    T_sw2: int
    T_w3: int
    lam_ss: int
    lam_sw: int
    lam_ww: int


# Estimate field -> truth field for the ratio columns
RATIO_FIELDS = {
    "N_hat": "N",
    "q_hat": "q",
    "Ks_hat": "Ks",
    "Kw_hat": "Kw",
    "Kss_hat": "Kss",
    "Ksw_hat": "Ksw",
    "Kww_hat": "Kww",
    "cc_hat": "cc",
    "cc_crude": "cc",
}

TRIAL_KEY_COLUMNS = ("cell", "trial", "N", "q", "B", "model", "retries", "status", "error")
TRUTH_COLUMNS = tuple(f"true_{name}" for name in TruthValues.model_fields)
RATIO_COLUMNS = tuple(f"ratio_{name}" for name in RATIO_FIELDS)
TRIAL_COLUMNS = TRIAL_KEY_COLUMNS + TRUTH_COLUMNS + CSV_COLUMNS + RATIO_COLUMNS


class TrialRecord(BaseModel):
    """One Monte Carlo trial: cell parameters, truth, estimates and status."""

    cell: int
    trial: int
    node_count: int
    q: float
    budget: int
    model: str
    retries: int = 0
    status: str = "ok"
    error: Optional[str] = None
    truth: Optional[TruthValues] = None
    report: Optional[EstimateReport] = None
    elapsed: float = 0.0

    def ratios(self) -> Dict[str, Optional[float]]:
        """Estimate / truth for every ratio field; None when undefined."""
        ratios: Dict[str, Optional[float]] = {}
        truth = self.truth.model_dump() if self.truth else {}
        truth["q"] = self.q
        estimates = self.report.model_dump() if self.report else {}
        for estimate_name, truth_name in RATIO_FIELDS.items():
            estimate = estimates.get(estimate_name)
            true_value = truth.get(truth_name)
            if estimate is None or not true_value:
                ratios[f"ratio_{estimate_name}"] = None
            else:
                ratios[f"ratio_{estimate_name}"] = estimate / true_value
        return ratios

    def to_row(self, include_timing: bool = False) -> Dict[str, Any]:
        row: Dict[str, Any] = {
            "cell": self.cell,
            "trial": self.trial,
            "N": self.node_count,
            "q": self.q,
            "B": self.budget,
            "model": self.model,
            "retries": self.retries,
            "status": self.status,
            "error": self.error,
        }
        truth = self.truth.model_dump() if self.truth else {}
        row.update({f"true_{name}": truth.get(name) for name in TruthValues.model_fields})
        if self.report is not None:
            row.update(self.report.to_row())
        else:
            row.update({column: None for column in CSV_COLUMNS})
        row.update(self.ratios())
        if include_timing:
            row["elapsed"] = self.elapsed
        return row
