"""Tests for least-squares phase function fitting."""

import math

import numpy as np
import pytest

from phasefit.models.estimation import EstimationConfig, MeasurementDistribution
from phasefit.models.state import StateSpec
from phasefit.noise import perturb, single_estimate, trial_stream
from phasefit.pffa import (
    GRID_CACHE_SIZE,
    TemplateModel,
    ambiguity_scan,
    estimate_phase,
    lms_objective,
    template_probs,
)
from phasefit.rotation import interferometer_probs
from phasefit.states import build_state
from phasefit.utils.errors import EstimationError

DOMAIN_END = math.pi / 4


def clean(spec: StateSpec, phi: float) -> MeasurementDistribution:
    return interferometer_probs(build_state(spec), phi)


class TestTemplates:
    def test_five_functions_for_j2(self, noon2):
        f = template_probs(noon2, 0.0)
        assert len(f.probs) == 5
        assert f.probability(2) == pytest.approx(0.5, abs=1e-14)
        assert f.probability(-2) == pytest.approx(0.5, abs=1e-14)

    def test_same_path_as_interferometer(self, noon2):
        assert template_probs(noon2, 0.2).probs == clean(noon2, 0.2).probs


class TestObjective:
    def test_zero_at_truth(self, noon2):
        assert lms_objective(clean(noon2, 0.3), noon2, 0.3) == 0.0

    def test_positive_elsewhere(self, noon2):
        measured = clean(noon2, 0.4)
        for x in np.linspace(0, DOMAIN_END, 101):
            if abs(x - 0.4) > 1e-3:
                assert lms_objective(measured, noon2, float(x)) > 0

    def test_continuity(self, noon2):
        measured = clean(noon2, 0.2)
        a = lms_objective(measured, noon2, 0.5)
        b = lms_objective(measured, noon2, 0.5 + 1e-9)
        assert abs(a - b) < 1e-7

    def test_missing_m_counts_as_zero(self, noon2):
        measured = MeasurementDistribution(phi=0.0, probs={4: 0.5, -4: 0.5})
        assert lms_objective(measured, noon2, 0.0) == pytest.approx(0.0, abs=1e-28)

    def test_accepts_negative_probabilities(self, noon2):
        measured = MeasurementDistribution(phi=0.0, probs={4: 0.6, -4: 0.5, 0: -0.1})
        assert lms_objective(measured, noon2, 0.0) > 0


class TestEstimatePhase:
    def test_noiseless(self, noon2):
        result = estimate_phase(clean(noon2, 0.1), noon2, EstimationConfig())
        assert result.estimate == pytest.approx(0.1, abs=1e-9)
        assert result.residual < 1e-18
        assert result.evaluations > 4097

    def test_boundary_optimum(self, noon2):
        result = estimate_phase(clean(noon2, 0.0), noon2, EstimationConfig())
        assert abs(result.estimate) <= 1e-13

    def test_interior_grid(self, noon2):
        config = EstimationConfig()
        for k in range(1, 102):
            phi = DOMAIN_END * k / 102
            result = estimate_phase(clean(noon2, phi), noon2, config)
            assert abs(result.estimate - phi) < 1e-9

    def test_grid_node_is_kept(self, noon2):
        config = EstimationConfig()
        phi = float(config.grid()[1000])
        result = estimate_phase(clean(noon2, phi), noon2, config)
        assert abs(result.estimate - phi) <= config.refine_tol

    def test_deterministic(self, noon2):
        measured = perturb(clean(noon2, 0.3), 1e-6, trial_stream(11, 0, 0))
        config = EstimationConfig()
        assert estimate_phase(measured, noon2, config) == estimate_phase(measured, noon2, config)

    def test_noisy(self, noon2):
        measured = perturb(clean(noon2, 0.1), 1e-6, trial_stream(5, 0, 0))
        result = estimate_phase(measured, noon2, EstimationConfig())
        assert abs(result.estimate - 0.1) < 0.02
        assert 0.0 <= result.estimate <= DOMAIN_END

    def test_seeded_fit_at_small_noise(self, noon2):
        measured, result = single_estimate(noon2, 0.1, 1e-6, 5, EstimationConfig())
        expected = perturb(clean(noon2, 0.1), 1e-6, trial_stream(5, 0, 0))
        assert measured.probs == expected.probs
        assert result.estimate == estimate_phase(expected, noon2, EstimationConfig()).estimate
        assert abs(result.estimate - 0.1) < 0.01

    def test_custom_domain(self, noon2):
        config = EstimationConfig(domain=(0.05, 0.5), coarse_grid=257)
        result = estimate_phase(clean(noon2, 0.3), noon2, config)
        assert result.estimate == pytest.approx(0.3, abs=1e-9)

    def test_non_finite_objective(self, noon2):
        measured = MeasurementDistribution(phi=0.0, probs={4: math.nan, -4: 0.5})
        with pytest.raises(EstimationError) as info:
            estimate_phase(measured, noon2, EstimationConfig())
        assert info.value.x == 0.0

    def test_mixed_half_integer_support(self):
        spec = StateSpec.general(3, 0.5, 0.8)
        result = estimate_phase(clean(spec, 0.15), spec, EstimationConfig(domain=(0.0, 0.3)))
        assert result.estimate == pytest.approx(0.15, abs=1e-8)


class TestTemplateModel:
    def test_grid_is_reused(self, noon2):
        model = TemplateModel(noon2)
        config = EstimationConfig(coarse_grid=64)
        assert model.grid(config) is model.grid(config)

    def test_grid_cache_is_bounded(self, noon2):
        model = TemplateModel(noon2)
        first = EstimationConfig(domain=(0.0, 0.1), coarse_grid=64)
        model.grid(first)
        for k in range(1, GRID_CACHE_SIZE + 3):
            model.grid(EstimationConfig(domain=(0.0, 0.1 + 0.01 * k), coarse_grid=64))
        assert len(model._grids) == GRID_CACHE_SIZE
        assert (0.0, 0.1, 64) not in model._grids


class TestAmbiguityScan:
    def test_mirror_phase_is_indistinguishable(self, noon2):
        phi = 2 * math.pi * 100 / 1024
        xs, values = ambiguity_scan(clean(noon2, phi), noon2, 1024)
        assert len(xs) == 1024
        assert values[100] < 1e-20
        assert values[924] < 1e-20
        assert values[300] > 1e-6
