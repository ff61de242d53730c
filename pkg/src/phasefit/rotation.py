"""
Angular-momentum rotations about x and the interferometer statistics they produce.

Every block is indexed by ascending m = -j..+j. The interferometer acts on a
state as D_x(phi) = exp(-i phi J_x), computed from the eigendecomposition of
the real-symmetric J_x.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .models.estimation import MeasurementDistribution
from .states import QuantumState
from .utils.errors import AngularMomentumError


@dataclass(frozen=True)
class AngularBlock:
    """(2j+1)x(2j+1) operator on one j subspace, rows and columns ascending in m."""

    two_j: int
    matrix: np.ndarray

    @property
    def j(self) -> float:
        return self.two_j / 2

    def unitarity_error(self) -> float:
        """max |U U^dagger - I|."""
        dim = self.matrix.shape[0]
        return float(np.max(np.abs(self.matrix @ self.matrix.conj().T - np.eye(dim))))


def _two_j(j: float) -> int:
    doubled = 2 * j
    if not math.isfinite(doubled) or doubled < 0 or doubled != round(doubled):
        raise AngularMomentumError(f"j must be a non-negative half-integer, got {j!r}")
    return int(round(doubled))


@lru_cache(maxsize=None)
def _jx(two_j: int) -> np.ndarray:
    j = two_j / 2
    ms = np.arange(-two_j, two_j + 1, 2) / 2
    # <j, m+1| J+ |j, m> for m = -j .. j-1
    raising = np.sqrt(j * (j + 1) - ms[:-1] * (ms[:-1] + 1))
    jx = (np.diag(raising, -1) + np.diag(raising, 1)) / 2
    jx.setflags(write=False)
    return jx


@lru_cache(maxsize=None)
def _spectral(two_j: int) -> tuple[np.ndarray, np.ndarray]:
    eigenvalues, vectors = np.linalg.eigh(_jx(two_j))
    eigenvalues.setflags(write=False)
    vectors.setflags(write=False)
    return eigenvalues, vectors


def jx_matrix(j: float) -> AngularBlock:
    """
    J_x = (J+ + J-)/2 on the spin-j subspace.

    Raises:
        AngularMomentumError: If 2j is not a non-negative integer
    """
    two_j = _two_j(j)
    return AngularBlock(two_j, _jx(two_j).copy())


def rotation_block(j: float, phi: float) -> AngularBlock:
    """exp(-i phi J_x) by spectral decomposition V diag(exp(-i phi lambda)) V^T."""
    two_j = _two_j(j)
    eigenvalues, vectors = _spectral(two_j)
    phases = np.exp(-1j * phi * eigenvalues)
    return AngularBlock(two_j, (vectors * phases) @ vectors.T)


def rotation_block_series(
    j: float, phi: float, terms: int = 30, squarings: int = 8
) -> AngularBlock:
    """
    exp(-i phi J_x) by a scaled-and-squared truncated Taylor series.

    Reference path, independent of the eigendecomposition.
    """
    two_j = _two_j(j)
    generator = -1j * phi * _jx(two_j) / 2.0**squarings
    dim = two_j + 1

    coefficients = [1.0]
    for k in range(terms):
        coefficients.append(coefficients[-1] / (k + 1))

    result = np.eye(dim, dtype=complex) * coefficients[terms]
    for k in range(terms - 1, -1, -1):
        result = generator @ result + np.eye(dim) * coefficients[k]

    for _ in range(squarings):
        result = result @ result
    return AngularBlock(two_j, result)


@dataclass(frozen=True)
class _BlockPlan:
    eigenvalues: np.ndarray
    vectors: np.ndarray
    weights: np.ndarray  # V^T c, the state's block amplitudes in the J_x eigenbasis
    columns: tuple[int, ...]


@dataclass(frozen=True)
class RotationPlan:
    """Per-state precomputation for evaluating D_x(phi)|psi> at many phases."""

    support: tuple[int, ...]
    blocks: tuple[_BlockPlan, ...]

    def probabilities(self, phis: np.ndarray) -> np.ndarray:
        """
        Interferometer statistics, shape (len(phis), len(support)).

        Blocks of different j contribute incoherently to the same m.
        """
        phis = np.atleast_1d(np.asarray(phis, dtype=float))
        probs = np.zeros((phis.size, len(self.support)))
        for block in self.blocks:
            phases = np.exp(-1j * np.multiply.outer(phis, block.eigenvalues))
            rotated = (phases * block.weights) @ block.vectors.T
            probs[:, block.columns] += np.abs(rotated) ** 2
        return probs


@lru_cache(maxsize=256)
def rotation_plan(state: QuantumState) -> RotationPlan:
    """Eigenbasis amplitudes of every j block of a state, detector support ascending in m."""
    grouped = state.blocks()
    support = tuple(
        sorted({two_m for two_j in grouped for two_m in range(-two_j, two_j + 1, 2)})
    )
    column = {two_m: k for k, two_m in enumerate(support)}

    blocks = []
    for two_j, entries in grouped.items():
        vector = np.zeros(two_j + 1, dtype=complex)
        for entry in entries:
            vector[(entry.two_m + two_j) // 2] = entry.amp
        eigenvalues, vectors = _spectral(two_j)
        weights = vectors.T @ vector
        weights.setflags(write=False)
        columns = tuple(column[two_m] for two_m in range(-two_j, two_j + 1, 2))
        blocks.append(_BlockPlan(eigenvalues, vectors, weights, columns))
    return RotationPlan(support, tuple(blocks))


def probability_matrix(state: QuantumState, phis: np.ndarray) -> tuple[tuple[int, ...], np.ndarray]:
    """
    Interferometer statistics for many phases at once.

    Returns:
        Tuple of (doubled-m detector support, array of shape (len(phis), len(support)))
    """
    plan = rotation_plan(state)
    return plan.support, plan.probabilities(phis)


def probability_vector(state: QuantumState, phi: float) -> tuple[tuple[int, ...], np.ndarray]:
    support, probs = probability_matrix(state, np.array([phi]))
    return support, probs[0]


def interferometer_probs(state: QuantumState, phi: float) -> MeasurementDistribution:
    """
    Statistics P_m = sum_j |<j, m| D_x(phi) |psi>|^2 of the number-difference measurement.

    Args:
        state: Normalized input state
        phi: Relative arm phase (radian)

    Returns:
        Distribution over every m reachable from the state's largest j
    """
    support, probs = probability_vector(state, phi)
    return MeasurementDistribution(
        phi=phi, probs={two_m: float(p) for two_m, p in zip(support, probs)}
    )


def mean_number_difference(dist: MeasurementDistribution) -> float:
    """sum_m m P_m, the averaged photocurrent difference of a first-order interferometer."""
    return math.fsum(two_m / 2 * p for two_m, p in dist.probs.items())
