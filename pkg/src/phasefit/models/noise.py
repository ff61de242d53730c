"""Models for the additive white-Gaussian-noise robustness study."""

from pydantic import BaseModel, ConfigDict, Field

SWEEP_COLUMNS = ("sigma2", "mean_error", "mean_abs_error", "std_error", "trials")


class NoiseConfig(BaseModel):
    """One noise power of the study."""

    model_config = ConfigDict(frozen=True)

    sigma2: float = Field(..., ge=0, description="AWGN power (probability units squared)")
    trials_mean: int = Field(40000, ge=1, description="Trials behind the signed-error average")
    trials_abs: int = Field(2000, ge=1, description="Trials behind the absolute-error average")
    phi_true: float = Field(..., description="True phase (radian)")
    seed: int = Field(0, ge=0, lt=2**64, description="Master seed")


class SweepRow(BaseModel):
    """Aggregated estimation error at one noise power."""

    model_config = ConfigDict(frozen=True)

    sigma2: float
    mean_error: float = Field(..., description="Mean signed error (radian)")
    mean_abs_error: float = Field(..., description="Mean absolute error (radian)")
    std_error: float = Field(..., description="Standard deviation of the signed error")
    trials: int = Field(..., description="Trials behind mean_error")
    trials_abs: int = Field(..., description="Trials behind mean_abs_error")
    edge_fraction: float = Field(
        0.0, ge=0, le=1, description="Share of signed-stage estimates on a domain endpoint"
    )
    biased: bool = Field(
        False, description="|mean_error| beyond 4 std_error / sqrt(trials) and the fit tolerance"
    )

    def csv_values(self) -> tuple[float | int, ...]:
        return tuple(getattr(self, name) for name in SWEEP_COLUMNS)
