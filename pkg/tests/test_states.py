"""Tests for state construction and the two-mode to angular-momentum mapping."""

import math

import pytest

from phasefit.models.state import StateKind, StateSpec
from phasefit.states import (
    AmplitudeEntry,
    QuantumState,
    build_state,
    entry_from_fock,
    expected_j,
    fock_occupations,
    m_gap,
    photon_cost,
)
from phasefit.utils.errors import AperiodicStateError, ParityError, StateSpecError


class TestStateSpec:
    def test_kind_aliases(self):
        assert StateKind.parse("noon") is StateKind.NOON
        assert StateKind.parse("SubState") is StateKind.SUBSTATE
        assert StateKind.parse("noonvac") is StateKind.NOON_VAC
        assert StateKind.parse("general") is StateKind.GENERAL
        assert StateKind.parse("GeneralEq1") is StateKind.GENERAL

    def test_unknown_kind(self):
        with pytest.raises(StateSpecError):
            StateKind.parse("cat")

    def test_json_round_trip(self):
        spec = StateSpec.substate(8, 1.5)
        assert StateSpec.from_json(spec.to_json()) == spec
        assert "n" not in spec.to_json()

    def test_substate_requires_even_jmax(self):
        with pytest.raises(ParityError):
            build_state(StateSpec.substate(7, 1.0))

    def test_noon_rejects_extra_parameters(self):
        with pytest.raises(StateSpecError):
            build_state(StateSpec(kind=StateKind.NOON, j_max=2, r1=0.5))

    def test_nonpositive_jmax(self):
        with pytest.raises(StateSpecError):
            build_state(StateSpec.noon(0))

    def test_noon_vac_weights(self):
        r1, r2 = StateSpec.noon_vac(4, 8.0).resolved_weights()
        assert r1 == 0.0
        assert r2 == pytest.approx(0.25)


class TestBuildState:
    def test_noon_components(self):
        state = build_state(StateSpec.noon(2))
        assert len(state.entries) == 2
        assert {e.two_m for e in state.entries} == {-4, 4}
        assert all(e.two_j == 4 for e in state.entries)
        assert all(e.amp == pytest.approx(1 / math.sqrt(2)) for e in state.entries)

    def test_substate_without_r1_drops_components(self):
        state = build_state(StateSpec.substate(8, 0.0))
        assert len(state.entries) == 3
        assert state.support() == (-8, 0, 8)

    def test_normalized(self):
        for spec in [StateSpec.noon(3), StateSpec.substate(4, 2.0), StateSpec.general(3, 0.4, 0.9)]:
            state = build_state(spec)
            assert math.fsum(e.probability for e in state.entries) == pytest.approx(1.0, abs=1e-12)

    def test_noon_vac_photon_cost(self):
        state = build_state(StateSpec.noon_vac(6, 3.0))
        assert photon_cost(state) == pytest.approx(2 * 6 / 4)

    def test_substate_photon_cost_is_jmax(self):
        for r1 in (0.0, 1.0, 5.0):
            assert photon_cost(build_state(StateSpec.substate(8, r1))) == pytest.approx(8.0)

    def test_expected_j_of_noon(self):
        assert expected_j(build_state(StateSpec.noon(5))) == pytest.approx(5.0)


class TestMapping:
    @pytest.mark.parametrize("n_u,n_d", [(0, 0), (3, 0), (0, 4), (2, 5), (7, 7)])
    def test_fock_round_trip(self, n_u, n_d):
        entry = entry_from_fock(n_u, n_d, 1.0)
        assert entry.j == (n_u + n_d) / 2
        assert entry.m == (n_u - n_d) / 2
        assert fock_occupations(entry) == (n_u, n_d)

    def test_negative_photons(self):
        with pytest.raises(StateSpecError):
            entry_from_fock(-1, 2, 1.0)

    def test_m_outside_j(self):
        with pytest.raises(StateSpecError):
            AmplitudeEntry(two_j=2, two_m=4, amp=1.0)

    def test_unnormalized_state(self):
        with pytest.raises(StateSpecError):
            QuantumState((AmplitudeEntry(2, 2, 1.0), AmplitudeEntry(2, -2, 1.0)))

    def test_duplicate_components(self):
        with pytest.raises(StateSpecError):
            QuantumState((AmplitudeEntry(2, 2, 0.6), AmplitudeEntry(2, 2, 0.8)))


class TestMGap:
    def test_noon(self):
        assert m_gap(build_state(StateSpec.noon(2))) == 4

    def test_substate(self):
        assert m_gap(build_state(StateSpec.substate(8, 1.0))) == 4

    def test_half_integer_m(self):
        state = QuantumState(
            (AmplitudeEntry(3, 3, 1 / math.sqrt(2)), AmplitudeEntry(3, -3, 1 / math.sqrt(2)))
        )
        assert m_gap(state) == 3

    def test_single_m_is_aperiodic(self):
        state = QuantumState((AmplitudeEntry(0, 0, 1.0),))
        with pytest.raises(AperiodicStateError):
            m_gap(state)
