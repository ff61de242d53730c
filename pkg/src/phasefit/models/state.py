"""State specification model for N00N components superposed with the vacuum."""

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from ..utils.errors import ParityError, StateSpecError

SUBSTATE_R2 = 1 / math.sqrt(2)


class StateKind(str, Enum):
    """State class selector."""

    NOON = "Noon"
    SUBSTATE = "SubState"
    NOON_VAC = "NoonVac"
    GENERAL = "GeneralEq1"

    @classmethod
    def parse(cls, name: str) -> "StateKind":
        """Accept the enum value or a short lowercase alias (noon, substate, noonvac, general)."""
        lowered = name.strip().lower()
        for kind in cls:
            if lowered in (kind.value.lower(), kind.name.lower().replace("_", "")):
                return kind
        raise StateSpecError(f"Unknown state kind '{name}'")


class StateSpec(BaseModel):
    """
    Parameters of a state built from N00N components and the vacuum.

    Unused fields stay None and are omitted from JSON.
    """

    model_config = ConfigDict(frozen=True)

    kind: StateKind = Field(..., description="State class")
    j_max: int = Field(..., description="Largest angular momentum (2*j_max photons)")
    r1: float | None = Field(None, ge=0, description="Sub-harmonic N00N weight")
    r2: float | None = Field(None, gt=0, description="Largest N00N component weight")
    n: float | None = Field(None, gt=0, description="N00N-vac parameter, r2 = 1/sqrt(2n)")

    @classmethod
    def from_args(
        cls,
        kind: str,
        j_max: int,
        r1: float | None = None,
        r2: float | None = None,
        n: float | None = None,
    ) -> "StateSpec":
        """Spec from a kind name and loose parameters, as passed on the command line or to tools."""
        return cls(kind=StateKind.parse(kind), j_max=j_max, r1=r1, r2=r2, n=n)

    @classmethod
    def noon(cls, j_max: int) -> "StateSpec":
        return cls(kind=StateKind.NOON, j_max=j_max)

    @classmethod
    def substate(cls, j_max: int, r1: float) -> "StateSpec":
        return cls(kind=StateKind.SUBSTATE, j_max=j_max, r1=r1)

    @classmethod
    def noon_vac(cls, j_max: int, n: float) -> "StateSpec":
        return cls(kind=StateKind.NOON_VAC, j_max=j_max, n=n)

    @classmethod
    def general(cls, j_max: int, r1: float, r2: float) -> "StateSpec":
        return cls(kind=StateKind.GENERAL, j_max=j_max, r1=r1, r2=r2)

    def resolved_weights(self) -> tuple[float, float]:
        """
        Check class invariants and return the effective (r1, r2).

        Noon has no vacuum term; its weights are reported as (0, 1).

        Returns:
            Tuple of (r1, r2)

        Raises:
            StateSpecError: If the parameters do not describe a valid member
            ParityError: If a sub-state is requested with odd j_max
        """
        if self.j_max <= 0:
            raise StateSpecError(f"j_max must be a positive integer, got {self.j_max}")

        if self.kind is StateKind.NOON:
            if self.r1 or self.n is not None:
                raise StateSpecError("Noon states take no r1 or n parameter")
            return 0.0, 1.0

        if self.kind is StateKind.SUBSTATE:
            if self.j_max % 2:
                raise ParityError(f"SubState requires an even j_max, got {self.j_max}")
            if self.r1 is None:
                raise StateSpecError("SubState requires r1")
            if self.r2 is not None and not math.isclose(self.r2, SUBSTATE_R2, rel_tol=1e-12):
                raise StateSpecError("SubState fixes r2 = 1/sqrt(2)")
            return self.r1, SUBSTATE_R2

        if self.kind is StateKind.NOON_VAC:
            if self.n is None:
                raise StateSpecError("NoonVac requires n > 0")
            if self.r1:
                raise StateSpecError("NoonVac fixes r1 = 0")
            r2 = 1 / math.sqrt(2 * self.n)
            if self.r2 is not None and not math.isclose(self.r2, r2, rel_tol=1e-12):
                raise StateSpecError("NoonVac fixes r2 = 1/sqrt(2n)")
            return 0.0, r2

        if self.r1 is None or self.r2 is None:
            raise StateSpecError("GeneralEq1 requires both r1 and r2")
        return self.r1, self.r2

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)

    @classmethod
    def from_json(cls, payload: str) -> "StateSpec":
        return cls.model_validate_json(payload)
