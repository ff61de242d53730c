import math
from pathlib import Path
from pydantic_settings import BaseSettings, SettingsConfigDict

from .models.estimation import EstimationConfig
from .models.noise import NoiseConfig

# Get project root directory (approximate based on this file location)
# this file is in src/phasefit/config.py, so root is ../../..
PROJECT_ROOT = Path(__file__).parent.parent.parent
ENV_FILE = PROJECT_ROOT / ".env"


class PhaseFitConfig(BaseSettings):
    """Numerical and runtime configuration from PHASEFIT_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="PHASEFIT_",
        env_file=ENV_FILE,
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Reproducibility
    seed: int = 0
    threads: int = 1

    # Phase estimation
    coarse_grid: int = 4097
    refine_tol: float = 1e-13
    domain_lo: float = 0.0
    domain_hi: float = math.pi / 4

    # Phase representation numerics
    quad_abs_tol: float = 1e-12
    scan_points: int = 4096
    extremum_tol: float = 1e-12
    root_tol: float = 1e-13
    twin_rel_tol: float = 1e-8

    # Noise study
    trials_mean: int = 40000
    trials_abs: int = 2000

    # Output
    csv_digits: int = 17

    # Scales every tolerance used by the validation suite
    validate_tolerance_scale: float = 1.0

    # MCP server
    host: str = "127.0.0.1"
    port: int = 8000

    def estimation_config(
        self,
        domain: tuple[float, float] | None = None,
        coarse_grid: int | None = None,
        refine_tol: float | None = None,
    ) -> EstimationConfig:
        """
        Build an estimation config from settings, with optional overrides.

        Args:
            domain: Closed search interval (radian)
            coarse_grid: Number of coarse scan points
            refine_tol: Final bracket width (radian)

        Returns:
            Validated estimation config
        """
        return EstimationConfig(
            domain=domain if domain is not None else (self.domain_lo, self.domain_hi),
            coarse_grid=coarse_grid if coarse_grid is not None else self.coarse_grid,
            refine_tol=refine_tol if refine_tol is not None else self.refine_tol,
        )

    def noise_config(
        self,
        sigma2: float,
        phi_true: float | None = None,
        seed: int | None = None,
        trials_mean: int | None = None,
        trials_abs: int | None = None,
    ) -> NoiseConfig:
        """
        Build a noise config for one noise power.

        Args:
            sigma2: AWGN power
            phi_true: True phase the statistics are generated at (defaults to the
                middle of the search domain)
            seed: Master seed (defaults to settings seed)
            trials_mean: Trials for the signed-error average
            trials_abs: Trials for the absolute-error average

        Returns:
            Validated noise config
        """
        return NoiseConfig(
            sigma2=sigma2,
            phi_true=self.estimation_config().midpoint if phi_true is None else phi_true,
            seed=self.seed if seed is None else seed,
            trials_mean=trials_mean or self.trials_mean,
            trials_abs=trials_abs or self.trials_abs,
        )
