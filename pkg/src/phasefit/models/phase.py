"""Models for phase-representation bin geometry and metric reports."""

from pydantic import BaseModel, ConfigDict, Field

from .state import StateSpec


class BinLayout(BaseModel):
    """
    Bin geometry of a multi-peaked phase PDF on [-pi, pi).

    For sub-states each bin splits into a kept sub-bin (centered on the
    enhanced peak) and a dropped sub-bin; ``kept_mask`` runs over the
    sub-bins in the order of ``sub_centers``.
    """

    model_config = ConfigDict(frozen=True)

    bin_count: int = Field(..., gt=0)
    bin_width: float = Field(..., gt=0, description="Radian")
    centers: list[float] = Field(..., description="Bin centers, one at 0 (radian)")
    sub_width: float | None = Field(None, description="Sub-bin width (radian)")
    sub_centers: list[float] | None = None
    kept_mask: list[bool] | None = None

    @property
    def measure_width(self) -> float:
        """Width of the bin the local metrics are taken on (kept sub-bin if any)."""
        return self.sub_width if self.sub_width is not None else self.bin_width

    def dropped_centers(self) -> list[float]:
        if self.sub_centers is None or self.kept_mask is None:
            return []
        return [c for c, kept in zip(self.sub_centers, self.kept_mask) if not kept]


class MetricTwin(BaseModel):
    """A metric computed numerically and, where one exists, in closed form."""

    numerical: float | None = None
    closed_form: float | None = None
    defined: bool = Field(True, description="False when the numerical metric has no meaning")
    closed_form_defined: bool = Field(True, description="False when the closed form has no meaning")
    agree: bool | None = Field(None, description="Twin agreement within tolerance")
    note: str | None = None


class MetricReport(BaseModel):
    """Phase-representation metrics of one state."""

    spec: StateSpec
    photon_cost: float = Field(..., description="N = 2<j>")
    bin_count: int
    superresolution_factor: float = Field(..., description="Bins per unit photon cost")
    peak: MetricTwin = Field(default_factory=MetricTwin)
    visibility: MetricTwin = Field(default_factory=MetricTwin)
    hwhm: MetricTwin = Field(default_factory=MetricTwin)
    bin_variance: MetricTwin = Field(default_factory=MetricTwin)
    hwhm_coefficient: MetricTwin = Field(
        default_factory=MetricTwin, description="HWHM times N"
    )
    bin_variance_coefficient: MetricTwin = Field(
        default_factory=MetricTwin, description="Bin-variance times N^2"
    )
    p_drop: MetricTwin | None = None

    def twins(self) -> dict[str, MetricTwin]:
        named = {
            "peak": self.peak,
            "visibility": self.visibility,
            "hwhm": self.hwhm,
            "bin_variance": self.bin_variance,
            "hwhm_coefficient": self.hwhm_coefficient,
            "bin_variance_coefficient": self.bin_variance_coefficient,
        }
        if self.p_drop is not None:
            named["p_drop"] = self.p_drop
        return named
