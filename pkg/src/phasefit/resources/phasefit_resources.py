"""MCP resources for phasefit reference data."""

import json

from fastmcp import Context
from fastmcp.dependencies import Depends

from .. import __version__
from ..application import mcp
from ..dependencies import get_engine
from ..engine import PhaseFitEngine


@mcp.resource("phasefit://states/catalog")
async def get_state_catalog(ctx: Context) -> str:
    """
    State classes and the parameters each one takes.

    Args:
        ctx: MCP context (injected)

    Returns:
        JSON string of state classes
    """
    await ctx.info("Fetching state catalog resource")
    return json.dumps(PhaseFitEngine.catalog(), indent=2)


@mcp.resource("phasefit://server/info")
async def get_server_info(
    ctx: Context,
    engine: PhaseFitEngine = Depends(get_engine),
) -> str:
    """
    Version and effective configuration.

    Args:
        ctx: MCP context (injected)
        engine: Engine (injected)

    Returns:
        JSON string of server info
    """
    await ctx.info("Fetching server info resource")
    return json.dumps(
        {"version": __version__, "config": engine.config.model_dump(mode="json")},
        indent=2,
    )
