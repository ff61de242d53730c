"""Pydantic models for phasefit inputs and outputs."""

from .common import RunManifest
from .estimation import EstimationConfig, EstimationResult, MeasurementDistribution
from .noise import NoiseConfig, SweepRow
from .phase import BinLayout, MetricReport, MetricTwin
from .state import StateKind, StateSpec

__all__ = [
    "BinLayout",
    "EstimationConfig",
    "EstimationResult",
    "MeasurementDistribution",
    "MetricReport",
    "MetricTwin",
    "NoiseConfig",
    "RunManifest",
    "StateKind",
    "StateSpec",
    "SweepRow",
]
