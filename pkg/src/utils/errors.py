"""
Error hierarchy for graph construction, sampling and inference.

Every error carries a stable machine-readable ``code`` and a ``details``
dict so the CLI can emit the same JSON envelope for all data errors.
"""

from typing import Any, Dict


class InferenceError(Exception):
    """Base class for all tiesurvey data errors."""

    code = "inference_error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to the error envelope written on stderr."""
        return {"error": self.code, "message": self.message, "details": self.details}


# ============================================================================
# Graph construction
# ============================================================================


class SelfLoopError(InferenceError):
    code = "self_loop"


class LayerConflictError(InferenceError):
    """A node pair was placed in both the strong and the weak layer."""

    code = "layer_conflict"


class NodeOutOfRangeError(InferenceError):
    code = "node_out_of_range"


class EmptyGraphError(InferenceError):
    code = "empty_graph"


class NoTriadsError(InferenceError):
    code = "no_triads"


class EdgeListFormatError(InferenceError):
    """Malformed edge-list file; ``details["line"]`` is 1-based."""

    code = "edge_list_format"


# ============================================================================
# Generation and sampling
# ============================================================================


class InfeasibleTargetError(InferenceError):
    code = "infeasible_target"


class InsufficientWeakTiesError(InferenceError):
    code = "insufficient_weak_ties"


class DegenerateSampleError(InferenceError):
    code = "degenerate_sample"


class NotASeedError(InferenceError):
    code = "not_a_seed"


class SurveyFormatError(InferenceError):
    code = "survey_format"


# ============================================================================
# Estimation
# ============================================================================


class SingularDenominatorError(InferenceError):
    code = "singular_denominator"


class InvalidRegimeError(InferenceError):
    code = "invalid_regime"


class UnidentifiableError(InferenceError):
    """A probability range sum fell below the identifiability floor."""

    code = "unidentifiable"


class TooFewSeedsError(InferenceError):
    code = "too_few_seeds"


# ============================================================================
# Reporting
# ============================================================================


class ReportFormatError(InferenceError):
    """A trial table cannot be summarized."""

    code = "report_format"


class PipelineStageError(InferenceError):
    """Wraps a stage failure inside the full estimation pipeline."""

    code = "pipeline_stage"

    def __init__(self, stage: str, cause: InferenceError):
        super().__init__(
            f"stage '{stage}' failed: {cause.message}",
            stage=stage,
            cause=cause.code,
            **cause.details,
        )
        self.stage = stage
        self.cause = cause
