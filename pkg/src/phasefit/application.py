"""phasefit MCP Application - Central MCP instance definition."""

import sys
from collections.abc import AsyncIterator
from contextlib import asynccontextmanager

from fastmcp import FastMCP

from . import __version__
from .config import PhaseFitConfig
from .engine import PhaseFitEngine


@asynccontextmanager
async def lifespan(mcp: FastMCP) -> AsyncIterator[None]:
    """
    Server lifecycle management.

    Prints the effective configuration and runs a smoke check on startup.
    """
    # Startup
    try:
        config = PhaseFitConfig()
        print("🚀 phasefit MCP Server starting", file=sys.stderr)
        print(f"   Seed: {config.seed}  Threads: {config.threads}", file=sys.stderr)
        print(
            f"   Domain: [{config.domain_lo}, {config.domain_hi}]  "
            f"Coarse grid: {config.coarse_grid}",
            file=sys.stderr,
        )
        print(f"   Trials: {config.trials_mean} / {config.trials_abs}", file=sys.stderr)

        # Non-fatal: tools report their own failures
        try:
            async with PhaseFitEngine(config) as engine:
                report = await engine.smoke_check()
            if report.peak.agree and report.hwhm_coefficient.agree:
                print("✓ Numerics smoke check passed", file=sys.stderr)
            else:
                print("⚠ Numerics smoke check disagrees with closed forms", file=sys.stderr)
        except Exception as e:
            print(f"⚠ Numerics smoke check failed: {e}", file=sys.stderr)
            print("  Server will start anyway - tools may fail", file=sys.stderr)

        print("✓ phasefit MCP Server ready", file=sys.stderr)
    except Exception as e:
        print(f"✗ Failed to start server: {e}", file=sys.stderr)
        raise

    yield

    # Shutdown
    print("👋 phasefit MCP Server shutdown", file=sys.stderr)


# Initialize FastMCP server
mcp = FastMCP(
    name="phasefit",
    version=__version__,
    instructions="""
    Phase representation and phase function fitting for two-mode interferometry.

    States (N00N, sub-states, N00N-vac and general mixtures) are mapped onto
    angular momentum; tools compute phase PDFs, resolution metrics with their
    closed-form twins, interferometer statistics, least-squares phase estimates
    and noise-robustness sweeps.

    🎯 Filter by area: states, metrics, estimation, noise
    🔧 Filter by cost: read (fast), compute (Monte-Carlo, may take minutes)

    Numerics configured via PHASEFIT_* environment variables.
    """,
    lifespan=lifespan,
)
