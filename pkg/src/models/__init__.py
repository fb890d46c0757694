from src.models.census import MotifCensus, OpenTriadCounts, TriadTotals, TriangleCounts
from src.models.coefficients import CoefficientTables
from src.models.config import (
    ExperimentConfig,
    ExperimentFlags,
    GeneratorConfig,
    GeneratorParams,
    SamplingConfig,
    SweepAxes,
)
from src.models.graph import DegreeMoments, SingleLayerGraph, TwoLayerGraph
from src.models.observed import ExpectedObservables, Observables, ObservedLink, ObservedNetwork
from src.models.report import EstimateReport, JackknifeResult, TrialRecord, TruthValues

__all__ = [
    "MotifCensus",
    "OpenTriadCounts",
    "TriadTotals",
    "TriangleCounts",
    "CoefficientTables",
    "ExperimentConfig",
    "ExperimentFlags",
    "GeneratorConfig",
    "GeneratorParams",
    "SamplingConfig",
    "SweepAxes",
    "DegreeMoments",
    "SingleLayerGraph",
    "TwoLayerGraph",
    "ExpectedObservables",
    "Observables",
    "ObservedLink",
    "ObservedNetwork",
    "EstimateReport",
    "JackknifeResult",
    "TrialRecord",
    "TruthValues",
]
