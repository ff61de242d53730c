"""
Phase representation of number-difference states.

For states with a unique j per m the phase wavefunction is the Fourier series
Psi(phi) = (2 pi)^(-1/2) sum_m c_m exp(i m phi), and P(phi) = |Psi(phi)|^2 on
[-pi, pi). Local metrics (HWHM, bin-variance) are evaluated on one bin centered
at phi = 0 to stay clear of the branch cut at +-pi.
"""

import math

import numpy as np
from scipy import integrate

from . import closed_forms
from .config import PhaseFitConfig
from .models.phase import BinLayout, MetricReport, MetricTwin
from .models.state import StateKind, StateSpec
from .numerics import first_crossing, scan_extremum
from .states import QuantumState, build_state, m_gap, photon_cost
from .utils.errors import AperiodicStateError, QuadratureError, UnsupportedStateError

TWO_PI = 2 * math.pi
QUAD_SUBDIVISIONS = 200


class PhaseDistribution:
    """Evaluator of the phase PDF of a state."""

    def __init__(self, state: QuantumState):
        """
        Args:
            state: State with a unique j for every m

        Raises:
            UnsupportedStateError: If some m occurs in more than one j block, or
                the m values do not differ by integers
        """
        seen: set[int] = set()
        for entry in state.entries:
            if entry.two_m in seen:
                raise UnsupportedStateError(
                    f"m={entry.m} occurs in several j blocks; no Fourier phase representation"
                )
            seen.add(entry.two_m)
        if len({e.two_m % 2 for e in state.entries}) > 1:
            raise UnsupportedStateError(
                "m values mixing integers and half-integers are not 2pi-periodic"
            )

        self.state = state
        self._ms = np.array([e.m for e in state.entries])
        self._cs = np.array([e.amp for e in state.entries], dtype=complex)
        try:
            self.period: float | None = TWO_PI / m_gap(state)
        except AperiodicStateError:
            self.period = None

    def wavefunction(self, phi: np.ndarray | float) -> np.ndarray:
        phi = np.asarray(phi, dtype=float)
        terms = np.exp(1j * np.multiply.outer(phi, self._ms))
        return terms @ self._cs / math.sqrt(TWO_PI)

    def pdf(self, phi: np.ndarray | float) -> np.ndarray:
        return np.abs(self.wavefunction(phi)) ** 2

    def require_period(self) -> float:
        if self.period is None:
            raise AperiodicStateError("Single-m states have no bins")
        return self.period

    def integrate(self, a: float, b: float, quad_abs_tol: float = 1e-12, moment: int = 0) -> float:
        """Integral of phi^moment P(phi) over [a, b]."""

        def integrand(x: float) -> float:
            return float(x**moment * self.pdf(x))

        value, _ = integrate.quad(
            integrand, a, b, epsabs=quad_abs_tol, epsrel=1e-13, limit=QUAD_SUBDIVISIONS
        )
        return value


def phase_wavefunction(state: QuantumState, phi: float) -> complex:
    """Psi(phi) = (2 pi)^(-1/2) sum_m c_m exp(i m phi)."""
    return complex(PhaseDistribution(state).wavefunction(phi))


def phase_pdf(state: QuantumState, phi: float) -> float:
    """P(phi) = |Psi(phi)|^2, a density in 1/radian."""
    return float(PhaseDistribution(state).pdf(phi))


def pdf_grid(state: QuantumState, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """PDF sampled at phi_k = -pi + 2 pi k / samples, k = 0..samples-1."""
    if samples < 2:
        raise ValueError(f"samples must be at least 2, got {samples}")
    phis = -math.pi + TWO_PI * np.arange(samples) / samples
    return phis, PhaseDistribution(state).pdf(phis)


def _centers(count: int, width: float) -> list[float]:
    return [k * width for k in range(-(count // 2), count - count // 2)]


def bin_layout(state: QuantumState) -> BinLayout:
    """
    Bins of the phase PDF, one centered at phi = 0.

    Each period of the PDF is one bin. Sub-states instead use the period of
    their sub-harmonic, 2 pi/(j_max/2), split into a kept sub-bin on the
    enhanced peak and a dropped sub-bin, each 2 pi/j_max wide.

    Raises:
        AperiodicStateError: If the state has a single m value
    """
    spec = state.spec
    if spec is not None and spec.kind is StateKind.SUBSTATE:
        count = spec.j_max // 2
        width = TWO_PI / count
        sub_width = width / 2
        sub_count = 2 * count
        offset = sub_count // 2
        return BinLayout(
            bin_count=count,
            bin_width=width,
            centers=_centers(count, width),
            sub_width=sub_width,
            sub_centers=_centers(sub_count, sub_width),
            kept_mask=[(k - offset) % 2 == 0 for k in range(sub_count)],
        )

    period = PhaseDistribution(state).require_period()
    count = int(round(TWO_PI / period))
    width = TWO_PI / count
    return BinLayout(bin_count=count, bin_width=width, centers=_centers(count, width))


def peak_height(dist: PhaseDistribution) -> float:
    """P at the bin center phi = 0."""
    return float(dist.pdf(0.0))


def superresolution_factor(state: QuantumState) -> float:
    """Number of bins per unit photon cost."""
    return bin_layout(state).bin_count / photon_cost(state)


def visibility(dist: PhaseDistribution, scan_points: int = 4096, tol: float = 1e-12) -> float:
    """V = (max - min)/(max + min) over one period."""
    period = dist.require_period()
    _, high = scan_extremum(dist.pdf, 0.0, period, scan_points, tol, maximize=True)
    _, low = scan_extremum(dist.pdf, 0.0, period, scan_points, tol)
    low = max(low, 0.0)
    return (high - low) / (high + low)


def hwhm(
    dist: PhaseDistribution,
    layout: BinLayout,
    scan_points: int = 4096,
    tol: float = 1e-12,
    root_tol: float = 1e-13,
) -> float | None:
    """
    Half-width at half-maximum of the peak of the bin centered at 0.

    The half-max level is P_peak/2 measured from zero.

    Returns:
        Distance from the bin center to the half-max crossing, or None if the
        PDF stays above half the peak across the whole bin
    """
    half = layout.measure_width / 2
    level = peak_height(dist) / 2
    _, low = scan_extremum(dist.pdf, -half, half, scan_points, tol)
    if low > level:
        return None

    def excess(phi: np.ndarray) -> np.ndarray:
        return dist.pdf(phi) - level

    crossing = first_crossing(excess, 0.0, half, scan_points, root_tol)
    if crossing is None:
        crossing = first_crossing(lambda phi: excess(-phi), 0.0, half, scan_points, root_tol)
    if crossing is None:
        return None
    return crossing


def bin_variance(dist: PhaseDistribution, layout: BinLayout, quad_abs_tol: float = 1e-12) -> float:
    """
    Variance about the bin center of the PDF renormalized to the bin (kept sub-bin for sub-states).

    Raises:
        QuadratureError: If the bin carries no probability
    """
    half = layout.measure_width / 2
    mass = dist.integrate(-half, half, quad_abs_tol)
    if not mass > 0:
        raise QuadratureError(f"Bin [-{half}, {half}] carries no probability (mass={mass})")
    return dist.integrate(-half, half, quad_abs_tol, moment=2) / mass


def p_drop(state: QuantumState, quad_abs_tol: float = 1e-12) -> float:
    """
    Probability mass in the dropped sub-bins of a sub-state.

    Raises:
        UnsupportedStateError: If the state was not built as a sub-state
    """
    if state.spec is None or state.spec.kind is not StateKind.SUBSTATE:
        raise UnsupportedStateError("P(drop) is defined for sub-states only")
    layout = bin_layout(state)
    dist = PhaseDistribution(state)
    half = layout.measure_width / 2
    return math.fsum(
        dist.integrate(c - half, c + half, quad_abs_tol) for c in layout.dropped_centers()
    )


def closed_form_metrics(spec: StateSpec) -> MetricReport:
    """
    Every closed form for the class of a spec.

    Numerical fields are left empty; twins absent for GeneralEq1.
    """
    state = build_state(spec)
    cost = photon_cost(state)
    layout = bin_layout(state)
    report = MetricReport(
        spec=spec,
        photon_cost=cost,
        bin_count=layout.bin_count,
        superresolution_factor=layout.bin_count / cost,
    )

    if spec.kind is StateKind.NOON:
        report.peak.closed_form = closed_forms.NOON_PEAK
        report.visibility.closed_form = 1.0
        report.hwhm_coefficient.closed_form = closed_forms.NOON_HWHM_COEFFICIENT
        report.bin_variance_coefficient.closed_form = closed_forms.NOON_BIN_VARIANCE_COEFFICIENT

    elif spec.kind is StateKind.SUBSTATE:
        r1, _ = spec.resolved_weights()
        report.hwhm_coefficient.closed_form = closed_forms.substate_hwhm_coefficient(r1)
        report.bin_variance_coefficient.closed_form = (
            closed_forms.substate_bin_variance_coefficient(r1)
        )
        report.p_drop = MetricTwin(closed_form=closed_forms.substate_p_drop(r1))

    elif spec.kind is StateKind.NOON_VAC:
        n = spec.n or 0.0
        report.visibility.closed_form = closed_forms.noon_vac_visibility(n)
        if n < 2:
            report.visibility.note = (
                "unclipped expression gives "
                f"{closed_forms.noon_vac_visibility_unclipped(n):.12g}; "
                "the PDF reaches zero for n < 2"
            )
        coefficient = closed_forms.noon_vac_hwhm_coefficient(n)
        if coefficient is None:
            report.hwhm_coefficient.closed_form_defined = False
            report.hwhm_coefficient.note = "beyond min = max/2 the HWHM has no meaning"
        report.hwhm_coefficient.closed_form = coefficient
        report.bin_variance_coefficient.closed_form = (
            closed_forms.noon_vac_bin_variance_coefficient(n)
        )

    coefficient = report.hwhm_coefficient.closed_form
    if coefficient is not None:
        report.hwhm.closed_form = coefficient / cost
    report.hwhm.closed_form_defined = report.hwhm_coefficient.closed_form_defined
    coefficient = report.bin_variance_coefficient.closed_form
    if coefficient is not None:
        report.bin_variance.closed_form = coefficient / cost**2
    return report


def _agree(twin: MetricTwin, rel_tol: float) -> None:
    if not twin.closed_form_defined:
        twin.agree = not twin.defined
        return
    if twin.closed_form is None:
        return
    if twin.numerical is None:
        twin.agree = False
        return
    scale = max(abs(twin.closed_form), 1e-300)
    twin.agree = abs(twin.numerical - twin.closed_form) <= rel_tol * scale


def metric_report(spec: StateSpec, config: PhaseFitConfig | None = None) -> MetricReport:
    """
    Numerical metrics of a spec next to their closed-form twins.

    Args:
        spec: State specification
        config: Numerical tolerances (defaults from the environment)

    Returns:
        Report with agreement flags per metric
    """
    config = config or PhaseFitConfig()
    report = closed_form_metrics(spec)
    state = build_state(spec)
    dist = PhaseDistribution(state)
    layout = bin_layout(state)
    cost = report.photon_cost

    report.peak.numerical = peak_height(dist)
    report.visibility.numerical = visibility(dist, config.scan_points, config.extremum_tol)

    width = hwhm(dist, layout, config.scan_points, config.extremum_tol, config.root_tol)
    if width is None:
        report.hwhm.defined = False
        report.hwhm_coefficient.defined = False
        report.hwhm.note = "PDF minimum on the bin exceeds half the peak"
    else:
        report.hwhm.numerical = width
        report.hwhm_coefficient.numerical = width * cost

    variance = bin_variance(dist, layout, config.quad_abs_tol)
    report.bin_variance.numerical = variance
    report.bin_variance_coefficient.numerical = variance * cost**2

    if report.p_drop is not None:
        report.p_drop.numerical = p_drop(state, config.quad_abs_tol)

    for twin in report.twins().values():
        _agree(twin, config.twin_rel_tol)

    if spec.kind is StateKind.SUBSTATE:
        for twin in (report.bin_variance, report.bin_variance_coefficient):
            if twin.agree is False:
                twin.note = (
                    "reference expression disagrees with quadrature; quadrature is authoritative"
                )
    return report
