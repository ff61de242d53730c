"""Models for interferometer statistics and phase estimation."""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class MeasurementDistribution(BaseModel):
    """
    Interferometer statistics P_m at a relative arm phase.

    Keys of ``probs`` are doubled m values (2m), so half-integer m stay exact.
    Noisy distributions may leave [0, 1] and need not sum to one.
    """

    model_config = ConfigDict(frozen=True)

    phi: float = Field(..., description="Relative arm phase (radian)")
    probs: dict[int, float] = Field(..., description="Probability per doubled m")

    @property
    def support(self) -> tuple[int, ...]:
        """Doubled m values in ascending order."""
        return tuple(sorted(self.probs))

    def probability(self, m: float) -> float:
        """P_m for m given as a (half-)integer, 0 outside the support."""
        return self.probs.get(round(2 * m), 0.0)

    def vector(self, support: tuple[int, ...] | None = None) -> np.ndarray:
        """Probabilities ordered by the given doubled-m support (missing entries are 0)."""
        keys = self.support if support is None else support
        return np.array([self.probs.get(k, 0.0) for k in keys], dtype=float)

    def total(self) -> float:
        return math.fsum(self.probs.values())

    def is_normalized(self, tol: float = 1e-12) -> bool:
        """True when the probabilities sum to one and each lies in [0, 1+tol]."""
        in_range = all(-tol <= p <= 1 + tol for p in self.probs.values())
        return in_range and abs(self.total() - 1.0) <= tol


class EstimationConfig(BaseModel):
    """Search interval and tolerances for the least-squares phase fit."""

    model_config = ConfigDict(frozen=True)

    domain: tuple[float, float] = Field(
        (0.0, math.pi / 4), description="Closed search interval [a, b] (radian)"
    )
    coarse_grid: int = Field(4097, ge=64, description="Coarse scan points, endpoints included")
    refine_tol: float = Field(1e-13, ge=1e-14, description="Final bracket width (radian)")

    @model_validator(mode="after")
    def _check_domain(self) -> "EstimationConfig":
        a, b = self.domain
        if not (math.isfinite(a) and math.isfinite(b)) or a >= b:
            raise ValueError(f"domain must satisfy a < b, got [{a}, {b}]")
        return self

    @property
    def midpoint(self) -> float:
        a, b = self.domain
        return (a + b) / 2

    def grid(self) -> np.ndarray:
        a, b = self.domain
        return np.linspace(a, b, self.coarse_grid)


class EstimationResult(BaseModel):
    """Outcome of one least-squares phase fit."""

    model_config = ConfigDict(frozen=True)

    estimate: float = Field(..., description="Estimated phase (radian)")
    residual: float = Field(..., ge=0, description="Least-squares objective at the estimate")
    evaluations: int = Field(..., ge=0, description="Objective evaluations spent")
