"""
Invariant suite behind ``phasefit validate``.

Every check reports its worst observed error next to the tolerance it was held
to; tolerances are multiplied by ``validate_tolerance_scale``.
"""

import math
from collections.abc import Callable

import numpy as np
from pydantic import BaseModel, Field

from . import closed_forms
from .config import PhaseFitConfig
from .models.state import StateSpec
from .phase_rep import PhaseDistribution, metric_report, p_drop, pdf_grid, visibility
from .pffa import estimate_phase
from .rotation import (
    interferometer_probs,
    jx_matrix,
    rotation_block,
    rotation_block_series,
)
from .states import build_state, entry_from_fock, fock_occupations
from .utils.errors import PhaseFitError, ValidationFailure

HALF_INTEGER_JS = [k / 2 for k in range(1, 17)]


class CheckResult(BaseModel):
    """Outcome of one invariant check."""

    name: str
    passed: bool
    worst: float | None = Field(None, description="Largest observed error")
    tolerance: float
    detail: str = ""


def _unitarity(config: PhaseFitConfig) -> float:
    phis = 2 * math.pi * np.arange(32) / 32
    return max(rotation_block(j, phi).unitarity_error() for j in HALF_INTEGER_JS for phi in phis)


def _composition(config: PhaseFitConfig) -> float:
    worst = 0.0
    for j in HALF_INTEGER_JS:
        for a, b in [(0.3, 1.1), (2.0, -0.7), (math.pi, math.pi / 3)]:
            left = rotation_block(j, a).matrix @ rotation_block(j, b).matrix
            worst = max(worst, float(np.max(np.abs(left - rotation_block(j, a + b).matrix))))
    return worst


def _series_oracle(config: PhaseFitConfig) -> float:
    worst = 0.0
    for j in HALF_INTEGER_JS[:8]:
        for phi in [0.3, 0.7, 2.5, 5.9]:
            delta = rotation_block(j, phi).matrix - rotation_block_series(j, phi).matrix
            worst = max(worst, float(np.max(np.abs(delta))))
    return worst


def _jx_spectrum(config: PhaseFitConfig) -> float:
    worst = 0.0
    for j in HALF_INTEGER_JS:
        block = jx_matrix(j)
        expected = np.arange(-block.two_j, block.two_j + 1, 2) / 2
        worst = max(worst, float(np.max(np.abs(np.linalg.eigvalsh(block.matrix) - expected))))
    return worst


def _fock_mapping(config: PhaseFitConfig) -> float:
    misses = 0
    for n_u in range(6):
        for n_d in range(6):
            if fock_occupations(entry_from_fock(n_u, n_d, 1.0)) != (n_u, n_d):
                misses += 1
    return float(misses)


def _probability_conservation(config: PhaseFitConfig) -> float:
    rng = np.random.default_rng(config.seed)
    specs = [StateSpec.noon(3), StateSpec.substate(4, 0.8), StateSpec.noon_vac(5, 3.0)]
    worst = 0.0
    for spec in specs:
        state = build_state(spec)
        for phi in rng.uniform(0, 2 * math.pi, size=16):
            worst = max(worst, abs(interferometer_probs(state, float(phi)).total() - 1.0))
    return worst


def _noon_pdf(config: PhaseFitConfig) -> float:
    worst = 0.0
    for j_max in (1, 2, 4, 8):
        phis, values = pdf_grid(build_state(StateSpec.noon(j_max)), 1024)
        expected = np.cos(j_max * phis) ** 2 / math.pi
        worst = max(worst, float(np.max(np.abs(values - expected))))
    return worst


def _normalization(config: PhaseFitConfig) -> float:
    specs = [StateSpec.noon(4), StateSpec.substate(8, 1.0), StateSpec.noon_vac(8, 8.0)]
    worst = 0.0
    for spec in specs:
        mass = PhaseDistribution(build_state(spec)).integrate(
            -math.pi, math.pi, config.quad_abs_tol
        )
        worst = max(worst, abs(mass - 1.0))
    return worst


def _noon_twins(config: PhaseFitConfig) -> float:
    worst = 0.0
    for j_max in (1, 2, 4, 8):
        report = metric_report(StateSpec.noon(j_max), config)
        for twin in (report.hwhm_coefficient, report.bin_variance_coefficient):
            if twin.numerical is None or twin.closed_form is None:
                return math.inf
            worst = max(worst, abs(twin.numerical / twin.closed_form - 1.0))
    return worst


def _p_drop(config: PhaseFitConfig) -> float:
    worst = 0.0
    for r1 in (0.0, 0.5, 1.0, 3.0, 10.0):
        numerical = p_drop(build_state(StateSpec.substate(8, r1)), config.quad_abs_tol)
        worst = max(worst, abs(numerical - closed_forms.substate_p_drop(r1)))
    return worst


def _noon_vac_visibility(config: PhaseFitConfig) -> float:
    worst = 0.0
    for n in (3.0, 8.0, 20.0, 67.9411):
        dist = PhaseDistribution(build_state(StateSpec.noon_vac(8, n)))
        numerical = visibility(dist, config.scan_points, config.extremum_tol)
        worst = max(worst, abs(numerical - closed_forms.noon_vac_visibility(n)))
    return worst


def _estimator(config: PhaseFitConfig) -> float:
    spec = StateSpec.noon(2)
    estimation = config.estimation_config()
    a, b = estimation.domain
    worst = 0.0
    for k in range(1, 12):
        phi = a + (b - a) * k / 12
        measured = interferometer_probs(build_state(spec), phi)
        worst = max(worst, abs(estimate_phase(measured, spec, estimation).estimate - phi))
    return worst


# (name, check, tolerance before scaling)
CHECKS: list[tuple[str, Callable[[PhaseFitConfig], float], float]] = [
    ("jx_spectrum", _jx_spectrum, 1e-12),
    ("unitarity", _unitarity, 1e-12),
    ("composition", _composition, 1e-11),
    ("series_oracle", _series_oracle, 1e-10),
    ("fock_mapping", _fock_mapping, 0.5),
    ("probability_conservation", _probability_conservation, 1e-12),
    ("noon_pdf_closed_form", _noon_pdf, 1e-12),
    ("pdf_normalization", _normalization, 1e-10),
    ("noon_twin_agreement", _noon_twins, 1e-8),
    ("substate_p_drop", _p_drop, 1e-10),
    ("noon_vac_visibility", _noon_vac_visibility, 1e-10),
    ("estimator_consistency", _estimator, 1e-9),
]


def run_suite(config: PhaseFitConfig | None = None) -> list[CheckResult]:
    """
    Run every invariant check.

    Args:
        config: Numerical settings; ``validate_tolerance_scale`` scales tolerances

    Returns:
        One result per check, in suite order
    """
    config = config or PhaseFitConfig()
    results = []
    for name, check, tolerance in CHECKS:
        scaled = tolerance * config.validate_tolerance_scale
        try:
            worst = check(config)
        except PhaseFitError as e:
            results.append(CheckResult(name=name, passed=False, tolerance=scaled, detail=str(e)))
            continue
        results.append(
            CheckResult(name=name, passed=bool(worst <= scaled), worst=worst, tolerance=scaled)
        )
    return results


def first_failure(results: list[CheckResult]) -> ValidationFailure | None:
    for result in results:
        if not result.passed:
            detail = result.detail or f"worst error {result.worst!r} > {result.tolerance!r}"
            return ValidationFailure(result.name, detail)
    return None
