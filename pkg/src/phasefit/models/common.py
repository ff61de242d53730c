"""Common Pydantic models shared by the CLI and the MCP tools."""

import hashlib
from typing import Any

from pydantic import BaseModel, ConfigDict, Field


class RunManifest(BaseModel):
    """Reproduction record written next to every data output."""

    model_config = ConfigDict(frozen=True)

    command: str = Field(..., description="Subcommand that produced the data")
    parameters: dict[str, Any] = Field(
        default_factory=dict, description="Full effective parameter set"
    )
    seed: int | None = Field(None, description="Master seed, when randomness is involved")
    version: str = Field(..., description="phasefit version")
    output_checksum: str = Field(..., description="sha256 of the data bytes")

    @staticmethod
    def checksum(data: bytes) -> str:
        """Hex sha256 digest of data output."""
        return hashlib.sha256(data).hexdigest()
