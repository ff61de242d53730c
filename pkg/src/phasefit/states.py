"""
Quantum states in the angular-momentum basis.

Two harmonic oscillators (interferometer arms u and d) map onto angular
momentum through j = (n_u + n_d)/2 and m = (n_u - n_d)/2. Quantum numbers are
stored doubled (2j, 2m) so half-integer values and gcd logic stay exact.
"""

import math
from dataclasses import dataclass, field
from functools import reduce

from .models.state import StateKind, StateSpec
from .utils.errors import AperiodicStateError, StateSpecError

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class AmplitudeEntry:
    """Coefficient of the ket |j, m>, with j and m stored doubled."""

    two_j: int
    two_m: int
    amp: complex

    def __post_init__(self) -> None:
        if self.two_j < 0:
            raise StateSpecError(f"j must be non-negative, got {self.two_j / 2}")
        if abs(self.two_m) > self.two_j:
            raise StateSpecError(f"|m| must not exceed j, got j={self.j}, m={self.m}")
        if (self.two_j - self.two_m) % 2:
            raise StateSpecError(f"j={self.j} and m={self.m} differ by a non-integer")

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def m(self) -> float:
        return self.two_m / 2

    @property
    def probability(self) -> float:
        return abs(self.amp) ** 2


@dataclass(frozen=True)
class QuantumState:
    """Normalized superposition of |j, m> kets with distinct (j, m) pairs."""

    entries: tuple[AmplitudeEntry, ...]
    spec: StateSpec | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.entries:
            raise StateSpecError("A state needs at least one component")
        keys = [(e.two_j, e.two_m) for e in self.entries]
        if len(set(keys)) != len(keys):
            raise StateSpecError("Entries must have distinct (j, m) pairs")
        norm = math.fsum(e.probability for e in self.entries)
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise StateSpecError(f"State is not normalized: sum |amp|^2 = {norm!r}")

    @classmethod
    def from_unnormalized(
        cls, entries: list[AmplitudeEntry], spec: StateSpec | None = None
    ) -> "QuantumState":
        """Normalize raw weights and drop components with zero amplitude."""
        kept = [e for e in entries if e.amp != 0]
        norm = math.sqrt(math.fsum(e.probability for e in kept))
        if norm == 0:
            raise StateSpecError("Cannot normalize a state with zero norm")
        scaled = tuple(AmplitudeEntry(e.two_j, e.two_m, e.amp / norm) for e in kept)
        return cls(scaled, spec)

    def blocks(self) -> dict[int, list[AmplitudeEntry]]:
        """Entries grouped by doubled j, in ascending order of j."""
        grouped: dict[int, list[AmplitudeEntry]] = {}
        for entry in sorted(self.entries, key=lambda e: (e.two_j, e.two_m)):
            grouped.setdefault(entry.two_j, []).append(entry)
        return grouped

    def support(self) -> tuple[int, ...]:
        """Distinct doubled m values carried by the state, ascending."""
        return tuple(sorted({e.two_m for e in self.entries}))


def fock_occupations(entry: AmplitudeEntry) -> tuple[int, int]:
    """Photon numbers (n_u, n_d) of the two arms for a |j, m> ket."""
    return (entry.two_j + entry.two_m) // 2, (entry.two_j - entry.two_m) // 2


def entry_from_fock(n_u: int, n_d: int, amp: complex) -> AmplitudeEntry:
    """The |j, m> ket of the Fock pair |n_u>_u |n_d>_d."""
    if n_u < 0 or n_d < 0:
        raise StateSpecError(f"Photon numbers must be non-negative, got ({n_u}, {n_d})")
    return AmplitudeEntry(two_j=n_u + n_d, two_m=n_u - n_d, amp=amp)


def build_state(spec: StateSpec) -> QuantumState:
    """
    Construct the normalized state of a spec.

    Raw weights follow r2 (|2j_max,0> + |0,2j_max>) + r1 (|j_max,0> + |0,j_max>)
    + |0,0>; N00N states carry only the two 2j_max-photon components.

    Args:
        spec: State specification

    Returns:
        Normalized state, components with zero weight omitted

    Raises:
        StateSpecError: On invalid parameters (ParityError for odd sub-state j_max)
    """
    r1, r2 = spec.resolved_weights()
    top = 2 * spec.j_max

    if spec.kind is StateKind.NOON:
        raw = [entry_from_fock(top, 0, 1.0), entry_from_fock(0, top, 1.0)]
    else:
        raw = [
            entry_from_fock(top, 0, r2),
            entry_from_fock(0, top, r2),
            entry_from_fock(spec.j_max, 0, r1),
            entry_from_fock(0, spec.j_max, r1),
            entry_from_fock(0, 0, 1.0),
        ]
    return QuantumState.from_unnormalized(raw, spec)


def expected_j(state: QuantumState) -> float:
    """Mean angular momentum <j> = sum |amp|^2 j."""
    return math.fsum(e.probability * e.j for e in state.entries)


def photon_cost(state: QuantumState) -> float:
    """Expected photon number N = 2<j>."""
    return 2 * expected_j(state)


def m_gap(state: QuantumState) -> float:
    """
    Fundamental spacing of the m values present in the state.

    The phase PDF repeats with period 2*pi/m_gap.

    Raises:
        AperiodicStateError: If the state has a single m value
    """
    support = state.support()
    if len(support) < 2:
        raise AperiodicStateError("A single-m state has a flat, aperiodic phase PDF")
    doubled = reduce(math.gcd, (b - support[0] for b in support[1:]))
    return doubled / 2
