"""
Closed forms for the three state classes.

Coefficients multiply 1/N (HWHM) or 1/N^2 (bin-variance), with N = 2<j>.
Functions return None where the metric has no meaning.
"""

import math

SQRT2 = math.sqrt(2)
PI2 = math.pi**2

# N00N-vac parameter where min = max/2 (visibility 1/3); HWHM is undefined beyond it
NOON_VAC_HWHM_LIMIT = 2 * (17 + 12 * SQRT2)

NOON_HWHM_COEFFICIENT = math.pi / 2
NOON_BIN_VARIANCE_COEFFICIENT = PI2 / 3 - 2
NOON_PEAK = 1 / math.pi


def noon_hwhm(photons: float) -> float:
    return NOON_HWHM_COEFFICIENT / photons


def noon_bin_variance(photons: float) -> float:
    return NOON_BIN_VARIANCE_COEFFICIENT / photons**2


def substate_hwhm_coefficient(r1: float) -> float:
    """
    HWHM times N for sub-states.

    Branch chosen so the coefficient runs from pi/3 at r1 = 0 to pi/2 as
    r1 -> infinity; the half-max condition on cos((j_max/2) phi) is the
    positive root of 2c^2 + sqrt(2) r1 c - (3/2 + r1) = 0.
    """
    c = (math.sqrt(6 + 4 * r1 + r1**2) - r1) / (2 * SQRT2)
    return 2 * math.acos(c)


def substate_hwhm_outer_branch(r1: float) -> float:
    """
    Outer arccos branch 2 acos[(4r1 - 4 sqrt(6+4r1+r1^2))/(8 sqrt 2)].

    Equals 2 pi minus the HWHM coefficient.
    """
    arg = (4 * r1 - 4 * math.sqrt(6 + 4 * r1 + r1**2)) / (8 * SQRT2)
    return 2 * math.acos(arg)


def substate_bin_variance_coefficient(r1: float) -> float:
    """Kept-bin variance times N^2 for sub-states, checked against quadrature."""
    numerator = (
        128 * (27 + 13 * SQRT2) * r1
        + 144 * (3 + SQRT2) * PI2 * r1
        + 36 * math.pi**3 * (1 + r1**2)
        - 27 * math.pi * (8 * SQRT2 - 1 + 8 * r1**2)
    )
    denominator = 36 * (4 * (3 + SQRT2) * r1 + 3 * math.pi * (1 + r1**2))
    return numerator / denominator


def substate_p_drop(r1: float) -> float:
    """Probability that an estimate lands in a suppressed sub-bin."""
    return (3 - 4 * (3 + SQRT2) * r1 / (math.pi * (1 + r1**2))) / 6


def noon_vac_photon_cost(j_max: float, n: float) -> float:
    return 2 * j_max / (n + 1)


def noon_vac_hwhm_coefficient(n: float) -> float | None:
    """HWHM times N for N00N-vac states; None past the min = max/2 point."""
    c = (SQRT2 + math.sqrt(n) - SQRT2 * math.sqrt(n)) / 2
    if c < -1:
        return None
    return 2 / (n + 1) * math.acos(c)


def noon_vac_bin_variance_coefficient(n: float) -> float:
    """Bin-variance times N^2 for N00N-vac states."""
    return 2 * (3 - 24 * SQRT2 * math.sqrt(n) + 2 * PI2 + 2 * n * PI2) / (3 * (n + 1) ** 3)


def noon_vac_visibility(n: float) -> float:
    """
    Fringe visibility of N00N-vac states.

    The expression 2 sqrt(2) sqrt(n)/(2+n) holds while the PDF minimum is
    positive (n >= 2); below that the wavefunction has a node and V = 1.
    """
    if n < 2:
        return 1.0
    return 2 * SQRT2 * math.sqrt(n) / (2 + n)


def noon_vac_visibility_unclipped(n: float) -> float:
    return 2 * SQRT2 * math.sqrt(n) / (2 + n)
