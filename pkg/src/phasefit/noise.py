"""
Robustness of phase function fitting to additive white-Gaussian noise.

Each trial adds independent Gaussian noise to every clean probability P_m at
the true phase, fits, and records the signed error. Trial t of stage s draws
from its own stream seeded by (seed, s, t), so results do not depend on how
trials are scheduled across workers; reductions run in trial order.
"""

import math
from collections.abc import Callable, Sequence
from concurrent.futures import Executor, ThreadPoolExecutor

import numpy as np

from .models.estimation import EstimationConfig, EstimationResult, MeasurementDistribution
from .models.noise import NoiseConfig, SweepRow
from .models.state import StateSpec
from .pffa import estimate_phase, template_model
from .rotation import interferometer_probs
from .utils.errors import TrialFailedError

# Stream stages
MEAN_STAGE = 0
ABS_STAGE = 1
REPEAT_STAGE = 2

CHUNK = 256

# Distance (radian) under which an estimate counts as sitting on a domain endpoint
EDGE_TOL = 1e-9


def trial_stream(seed: int, stage: int, trial: int) -> np.random.Generator:
    """Independent generator for one trial of one sub-experiment."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(stage, trial))
    return np.random.Generator(np.random.PCG64(sequence))


def perturb(
    measured: MeasurementDistribution,
    sigma2: float,
    rng: np.random.Generator,
) -> MeasurementDistribution:
    """
    Add i.i.d. Gaussian(0, sigma2) noise to every probability.

    No clamping or renormalization: entries may leave [0, 1] and the sum may
    drift from 1. Noise is drawn in ascending order of m.
    """
    if sigma2 < 0:
        raise ValueError(f"sigma2 must be non-negative, got {sigma2}")
    support = measured.support
    noise = rng.normal(0.0, math.sqrt(sigma2), size=len(support))
    return MeasurementDistribution(
        phi=measured.phi,
        probs={k: measured.probs[k] + float(w) for k, w in zip(support, noise)},
    )


def clamp(measured: MeasurementDistribution) -> MeasurementDistribution:
    """Project noisy probabilities back onto [0, 1] and renormalize."""
    clipped = {k: min(max(p, 0.0), 1.0) for k, p in measured.probs.items()}
    total = math.fsum(clipped.values())
    if total == 0:
        return MeasurementDistribution(phi=measured.phi, probs=clipped)
    return MeasurementDistribution(
        phi=measured.phi, probs={k: p / total for k, p in clipped.items()}
    )


def _run_stage(
    spec: StateSpec,
    config: NoiseConfig,
    estimation: EstimationConfig,
    stage: int,
    count: int,
    executor: Executor | None,
    clamped: bool,
) -> list[float]:
    clean = interferometer_probs(template_model(spec).state, config.phi_true)

    def trial(t: int) -> float:
        try:
            noisy = perturb(clean, config.sigma2, trial_stream(config.seed, stage, t))
            if clamped:
                noisy = clamp(noisy)
            return estimate_phase(noisy, spec, estimation).estimate - config.phi_true
        except Exception as e:
            raise TrialFailedError(t, e) from e

    def chunk(start: int) -> list[float]:
        return [trial(t) for t in range(start, min(start + CHUNK, count))]

    starts = range(0, count, CHUNK)
    if executor is None:
        chunks = map(chunk, starts)
    else:
        chunks = executor.map(chunk, starts)
    return [error for block in chunks for error in block]


def run_trials(
    spec: StateSpec,
    config: NoiseConfig,
    estimation: EstimationConfig,
    threads: int = 1,
    executor: Executor | None = None,
    clamped: bool = False,
) -> SweepRow:
    """
    Error statistics of the phase fit at one noise power.

    The signed-error mean and spread come from ``trials_mean`` trials and the
    mean absolute error from a separate run of ``trials_abs`` trials. Rows are
    flagged ``biased`` when the mean error is statistically non-zero; a large
    ``edge_fraction`` shows estimates saturating at the search-domain ends.

    Args:
        spec: State fed to the interferometer
        config: Noise power, true phase, trial counts and seed
        estimation: Fit configuration
        threads: Worker threads when no executor is supplied
        executor: Shared executor to run trial chunks on
        clamped: Project noisy statistics onto valid probabilities before fitting

    Returns:
        Aggregated row

    Raises:
        TrialFailedError: If any trial's estimation fails
    """
    if executor is None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return run_trials(spec, config, estimation, executor=pool, clamped=clamped)

    signed = _run_stage(spec, config, estimation, MEAN_STAGE, config.trials_mean, executor, clamped)
    absolute = _run_stage(spec, config, estimation, ABS_STAGE, config.trials_abs, executor, clamped)

    mean = math.fsum(signed) / len(signed)
    spread = 0.0
    if len(signed) > 1:
        spread = math.sqrt(math.fsum((e - mean) ** 2 for e in signed) / (len(signed) - 1))
    bound = max(4 * spread / math.sqrt(len(signed)), estimation.refine_tol)

    a, b = estimation.domain
    on_edge = sum(
        1
        for e in signed
        if min(abs(config.phi_true + e - a), abs(config.phi_true + e - b)) <= EDGE_TOL
    )
    return SweepRow(
        sigma2=config.sigma2,
        mean_error=mean,
        mean_abs_error=math.fsum(abs(e) for e in absolute) / len(absolute),
        std_error=spread,
        trials=len(signed),
        trials_abs=len(absolute),
        edge_fraction=on_edge / len(signed),
        biased=abs(mean) > bound,
    )


def sweep(
    spec: StateSpec,
    sigma2_list: Sequence[float],
    base_config: NoiseConfig,
    estimation: EstimationConfig,
    threads: int = 1,
    executor: Executor | None = None,
    clamped: bool = False,
    on_row: Callable[[int, SweepRow], None] | None = None,
) -> list[SweepRow]:
    """
    One SweepRow per noise power, in input order.

    Raises:
        ValueError: If sigma2_list is empty
        TrialFailedError: Propagated from run_trials
    """
    if not sigma2_list:
        raise ValueError("sigma2_list must not be empty")
    if executor is None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sweep(
                spec,
                sigma2_list,
                base_config,
                estimation,
                executor=pool,
                clamped=clamped,
                on_row=on_row,
            )

    rows = []
    for index, sigma2 in enumerate(sigma2_list):
        config = base_config.model_copy(update={"sigma2": sigma2})
        row = run_trials(spec, config, estimation, executor=executor, clamped=clamped)
        rows.append(row)
        if on_row is not None:
            on_row(index, row)
    return rows


def derived_seed(seed: int, repeat: int) -> int:
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(REPEAT_STAGE, repeat))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def repeated_runs(
    spec: StateSpec,
    config: NoiseConfig,
    estimation: EstimationConfig,
    repeats: int,
    threads: int = 1,
    executor: Executor | None = None,
    clamped: bool = False,
) -> list[SweepRow]:
    """Independent rows at one noise power, seeds derived from the master seed."""
    if executor is None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return repeated_runs(spec, config, estimation, repeats, executor=pool, clamped=clamped)
    return [
        run_trials(
            spec,
            config.model_copy(update={"seed": derived_seed(config.seed, r)}),
            estimation,
            executor=executor,
            clamped=clamped,
        )
        for r in range(repeats)
    ]


def single_estimate(
    spec: StateSpec,
    phi_true: float,
    sigma2: float,
    seed: int,
    estimation: EstimationConfig,
    clamped: bool = False,
) -> tuple[MeasurementDistribution, EstimationResult]:
    """
    One simulate, perturb and fit run.

    Draws from the same stream as trial 0 of run_trials with the same seed.

    Returns:
        Tuple of (statistics handed to the fit, estimation result)
    """
    clean = interferometer_probs(template_model(spec).state, phi_true)
    noisy = perturb(clean, sigma2, trial_stream(seed, MEAN_STAGE, 0))
    if clamped:
        noisy = clamp(noisy)
    return noisy, estimate_phase(noisy, spec, estimation)
