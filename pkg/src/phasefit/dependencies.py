"""Dependency injection providers for the phasefit MCP server."""

from collections.abc import AsyncIterator
from contextlib import asynccontextmanager

from .config import PhaseFitConfig
from .engine import PhaseFitEngine

# Global engine instance
_engine: PhaseFitEngine | None = None


def get_config() -> PhaseFitConfig:
    """
    Get phasefit configuration from environment variables.

    Returns:
        Configuration instance
    """
    return PhaseFitConfig()


@asynccontextmanager
async def get_engine() -> AsyncIterator[PhaseFitEngine]:
    """
    Get or create the engine with lifecycle management.

    The trial pool is started on entry and stopped when the tool call ends.

    Yields:
        Engine instance
    """
    global _engine
    if _engine is None:
        _engine = PhaseFitEngine(get_config())

    async with _engine as engine:
        yield engine
