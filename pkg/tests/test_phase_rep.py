"""Tests for the phase PDF, bin geometry and resolution metrics."""

import math

import numpy as np
import pytest

from phasefit import closed_forms
from phasefit.models.state import StateSpec
from phasefit.phase_rep import (
    PhaseDistribution,
    bin_layout,
    closed_form_metrics,
    hwhm,
    metric_report,
    p_drop,
    pdf_grid,
    peak_height,
    phase_pdf,
    phase_wavefunction,
    superresolution_factor,
    visibility,
)
from phasefit.states import AmplitudeEntry, QuantumState, build_state, photon_cost
from phasefit.utils.errors import AperiodicStateError, UnsupportedStateError


def dist_of(spec: StateSpec) -> PhaseDistribution:
    return PhaseDistribution(build_state(spec))


class TestPhasePdf:
    @pytest.mark.parametrize("j_max", [1, 2, 4, 8])
    def test_noon_closed_form(self, j_max):
        phis, values = pdf_grid(build_state(StateSpec.noon(j_max)), 1024)
        assert np.max(np.abs(values - np.cos(j_max * phis) ** 2 / math.pi)) < 1e-12

    @pytest.mark.parametrize(
        "spec", [StateSpec.noon(4), StateSpec.substate(8, 1.0), StateSpec.noon_vac(8, 8.0)]
    )
    def test_normalization(self, spec):
        assert dist_of(spec).integrate(-math.pi, math.pi) == pytest.approx(1.0, abs=1e-10)

    def test_grid_points(self):
        phis, values = pdf_grid(build_state(StateSpec.noon(4)), 8)
        assert len(phis) == 8
        assert phis[0] == -math.pi
        assert phis[4] == 0.0
        assert values[4] == pytest.approx(1 / math.pi, rel=1e-14)

    def test_grid_needs_two_samples(self):
        with pytest.raises(ValueError):
            pdf_grid(build_state(StateSpec.noon(2)), 1)

    def test_scalar_helpers(self):
        state = build_state(StateSpec.noon(2))
        assert abs(phase_wavefunction(state, 0.3)) ** 2 == pytest.approx(phase_pdf(state, 0.3))

    def test_duplicate_m_has_no_phase_representation(self):
        state = QuantumState((AmplitudeEntry(2, 0, 0.6), AmplitudeEntry(0, 0, 0.8)))
        with pytest.raises(UnsupportedStateError):
            PhaseDistribution(state)

    def test_mixed_parity_rejected(self):
        with pytest.raises(UnsupportedStateError):
            PhaseDistribution(build_state(StateSpec.general(3, 0.5, 0.8)))

    def test_single_m_state_has_no_bins(self):
        state = QuantumState((AmplitudeEntry(0, 0, 1.0),))
        assert PhaseDistribution(state).period is None
        with pytest.raises(AperiodicStateError):
            bin_layout(state)


class TestBins:
    def test_noon_layout(self):
        layout = bin_layout(build_state(StateSpec.noon(2)))
        assert layout.bin_count == 4
        assert layout.bin_width == pytest.approx(math.pi / 2)
        assert 0.0 in layout.centers
        assert layout.sub_width is None

    def test_substate_layout(self):
        layout = bin_layout(build_state(StateSpec.substate(8, 1.0)))
        assert layout.bin_count == 4
        assert layout.sub_width == pytest.approx(2 * math.pi / 8)
        assert len(layout.sub_centers) == 8
        kept = dict(zip(layout.sub_centers, layout.kept_mask))
        assert kept[0.0] is True
        assert len(layout.dropped_centers()) == 4

    def test_superresolution(self):
        assert superresolution_factor(build_state(StateSpec.noon(3))) == pytest.approx(1.0)
        assert superresolution_factor(build_state(StateSpec.noon_vac(8, 3.0))) == pytest.approx(2.0)


class TestNoonMetrics:
    @pytest.mark.parametrize("j_max", [1, 2, 4, 8])
    def test_closed_form_coefficients(self, j_max):
        report = metric_report(StateSpec.noon(j_max))
        assert report.hwhm_coefficient.numerical == pytest.approx(math.pi / 2, rel=1e-8)
        assert report.bin_variance_coefficient.numerical == pytest.approx(
            math.pi**2 / 3 - 2, rel=1e-8
        )
        assert all(twin.agree for twin in report.twins().values() if twin.closed_form is not None)

    def test_four_photons(self):
        report = metric_report(StateSpec.noon(2))
        assert report.photon_cost == pytest.approx(4.0)
        assert report.hwhm.numerical == pytest.approx(math.pi / 8, rel=1e-8)
        assert report.bin_variance.numerical == pytest.approx((math.pi**2 / 3 - 2) / 16, rel=1e-8)
        assert report.peak.numerical == pytest.approx(1 / math.pi, rel=1e-12)
        assert report.visibility.numerical == pytest.approx(1.0, abs=1e-10)


class TestSubStateMetrics:
    def test_hwhm_endpoint(self):
        report = metric_report(StateSpec.substate(8, 0.0))
        assert report.hwhm_coefficient.numerical == pytest.approx(math.pi / 3, rel=1e-8)
        assert report.hwhm_coefficient.agree

    def test_hwhm_tends_to_noon(self):
        coefficient = metric_report(StateSpec.substate(8, 1000.0)).hwhm_coefficient.numerical
        assert coefficient == pytest.approx(math.pi / 2, abs=2e-3)

    def test_kept_bin_variance_at_zero_r1(self):
        report = metric_report(StateSpec.substate(8, 0.0))
        assert report.bin_variance_coefficient.numerical == pytest.approx(0.711441, abs=1e-5)

    def test_kept_bin_variance_at_unit_r1(self):
        report = metric_report(StateSpec.substate(8, 1.0))
        twin = report.bin_variance_coefficient
        assert twin.numerical == pytest.approx(0.869983, abs=1e-6)
        assert twin.closed_form == pytest.approx(
            closed_forms.substate_bin_variance_coefficient(1.0), rel=1e-14
        )
        assert twin.agree is False
        assert "quadrature is authoritative" in twin.note

    def test_hwhm_coefficient_nondecreasing_in_r1(self):
        coefficients = []
        for r1 in np.linspace(0.0, 10.0, 50):
            state = build_state(StateSpec.substate(8, float(r1)))
            width = hwhm(PhaseDistribution(state), bin_layout(state))
            assert width is not None
            coefficients.append(width * photon_cost(state))
        assert coefficients[0] == pytest.approx(math.pi / 3, rel=1e-8)
        assert all(b >= a - 1e-10 for a, b in zip(coefficients, coefficients[1:]))

    @pytest.mark.parametrize("r1", [0.0, 0.5, 1.0, 3.0, 10.0])
    def test_p_drop_matches_closed_form(self, r1):
        numerical = p_drop(build_state(StateSpec.substate(8, r1)))
        assert numerical == pytest.approx(closed_forms.substate_p_drop(r1), abs=1e-10)

    def test_p_drop_minimum(self):
        assert p_drop(build_state(StateSpec.substate(8, 1.0))) == pytest.approx(0.0316374, abs=1e-6)

    def test_p_drop_only_for_substates(self):
        with pytest.raises(UnsupportedStateError):
            p_drop(build_state(StateSpec.noon(4)))


class TestNoonVacMetrics:
    @pytest.mark.parametrize("n", [3.0, 8.0, 20.0, 67.9411])
    def test_visibility(self, n):
        numerical = visibility(dist_of(StateSpec.noon_vac(8, n)))
        assert numerical == pytest.approx(closed_forms.noon_vac_visibility(n), abs=1e-10)

    def test_visibility_third_at_limit(self):
        numerical = visibility(dist_of(StateSpec.noon_vac(8, closed_forms.NOON_VAC_HWHM_LIMIT)))
        assert numerical == pytest.approx(1 / 3, abs=1e-9)

    def test_visibility_below_two_reaches_one(self):
        report = metric_report(StateSpec.noon_vac(8, 1.0))
        assert report.visibility.numerical == pytest.approx(1.0, abs=1e-10)
        assert report.visibility.agree
        assert report.visibility.note is not None

    @pytest.mark.parametrize("j_max", [4, 8, 16])
    def test_peak_matches_noon_at_eight(self, j_max):
        assert peak_height(dist_of(StateSpec.noon_vac(j_max, 8.0))) == pytest.approx(
            1 / math.pi, abs=1e-10
        )

    @pytest.mark.parametrize("n", [1.0, 3.0, 20.0])
    def test_bin_variance_closed_form(self, n):
        report = metric_report(StateSpec.noon_vac(8, n))
        assert report.bin_variance_coefficient.numerical == pytest.approx(
            closed_forms.noon_vac_bin_variance_coefficient(n), rel=1e-8
        )

    def test_equals_substate_without_r1(self):
        a = metric_report(StateSpec.noon_vac(8, 1.0))
        b = metric_report(StateSpec.substate(8, 0.0))
        assert a.bin_variance.numerical == pytest.approx(b.bin_variance.numerical, abs=1e-10)
        assert a.hwhm.numerical == pytest.approx(b.hwhm.numerical, abs=1e-10)

    def test_beats_noon_at_n67(self):
        report = metric_report(StateSpec.noon_vac(8, 67.0))
        assert (math.pi / 2) / report.hwhm_coefficient.numerical > 17.87
        assert (math.pi**2 / 3 - 2) / report.bin_variance_coefficient.numerical > 569.9

    @pytest.mark.parametrize("n", [1.0, 3.0, 8.0, 20.0, 67.0])
    def test_twins_agree(self, n):
        report = metric_report(StateSpec.noon_vac(8, n))
        assert report.hwhm_coefficient.agree is True
        assert report.bin_variance_coefficient.agree is True
        assert report.visibility.agree is True

    def test_hwhm_undefined_past_limit(self):
        report = metric_report(StateSpec.noon_vac(8, 1.05 * closed_forms.NOON_VAC_HWHM_LIMIT))
        assert report.hwhm.defined is False
        assert report.hwhm.numerical is None
        assert report.hwhm_coefficient.closed_form_defined is False
        assert report.hwhm_coefficient.agree is True


class TestClosedFormMetrics:
    def test_general_state_has_no_twins(self):
        report = closed_form_metrics(StateSpec.general(4, 0.3, 0.6))
        assert report.hwhm.closed_form is None
        assert report.p_drop is None

    def test_general_report_leaves_agreement_open(self):
        report = metric_report(StateSpec.general(4, 0.3, 0.6))
        assert report.bin_variance.numerical > 0
        assert report.bin_variance.agree is None


class TestScaling:
    """HWHM times N and bin-variance times N^2 do not depend on j_max."""

    @pytest.mark.parametrize(
        "specs",
        [
            [StateSpec.substate(j_max, 1.0) for j_max in (4, 8, 16)],
            [StateSpec.noon_vac(j_max, 3.0) for j_max in (4, 8, 16)],
        ],
        ids=["substate", "noonvac"],
    )
    def test_coefficients_are_photon_independent(self, specs):
        reports = [metric_report(spec) for spec in specs]
        first = reports[0]
        for report in reports[1:]:
            assert report.hwhm_coefficient.numerical == pytest.approx(
                first.hwhm_coefficient.numerical, rel=1e-8
            )
            assert report.bin_variance_coefficient.numerical == pytest.approx(
                first.bin_variance_coefficient.numerical, rel=1e-8
            )
