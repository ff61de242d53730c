"""MCP tools for least-squares phase estimation."""

from fastmcp import Context
from fastmcp.dependencies import Depends

from ..application import mcp
from ..dependencies import get_engine
from ..engine import PhaseFitEngine
from ..models.state import StateSpec
from ..utils.errors import PhaseFitError


@mcp.tool(
    name="estimate_phase",
    description=(
        "Simulate the interferometer at phi, optionally add Gaussian noise of power sigma2 "
        "to every probability, and fit the phase back"
    ),
    tags={"estimation", "read"},
    annotations={"title": "Estimate Phase", "readOnlyHint": True},
)
async def estimate_phase(
    kind: str,
    j_max: int,
    phi: float,
    sigma2: float = 0.0,
    seed: int | None = None,
    domain_lo: float | None = None,
    domain_hi: float | None = None,
    r1: float | None = None,
    r2: float | None = None,
    n: float | None = None,
    ctx: Context = None,
    engine: PhaseFitEngine = Depends(get_engine),
) -> dict:
    """
    Run one simulate, perturb and fit round.

    Args:
        kind: State class (noon, substate, noonvac or general)
        j_max: Largest j; the top N00N component holds 2*j_max photons
        r1: Sub-harmonic weight (substate, general)
        r2: Top N00N weight (general)
        n: N00N-vac parameter (noonvac)
        phi: True phase (radian), inside the search domain
        sigma2: AWGN power added to each probability (0 for clean statistics)
        seed: Master seed (defaults to settings)
        domain_lo: Lower end of the search domain (defaults to settings)
        domain_hi: Upper end of the search domain (defaults to settings)
        ctx: MCP context (injected)
        engine: phasefit engine (injected)

    Returns:
        True phase, statistics handed to the fit and the estimation result
    """
    try:
        await ctx.info(f"Estimating phi={phi} for {kind} j_max={j_max} (sigma2={sigma2})")
        spec = StateSpec.from_args(kind, j_max, r1=r1, r2=r2, n=n)
        domain = None
        if domain_lo is not None or domain_hi is not None:
            config = engine.config
            domain = (
                config.domain_lo if domain_lo is None else domain_lo,
                config.domain_hi if domain_hi is None else domain_hi,
            )
        measured, result = await engine.estimate(spec, phi, sigma2=sigma2, seed=seed, domain=domain)
        await ctx.info(f"✓ Estimate {result.estimate!r} (error {result.estimate - phi:.3e})")
        return {
            "phi": phi,
            "measured": measured.model_dump(mode="json"),
            "result": result.model_dump(mode="json"),
        }
    except (PhaseFitError, ValueError) as e:
        await ctx.error(f"Failed to estimate phase: {e}")
        raise


@mcp.tool(
    name="ambiguity_scan",
    description="Least-squares objective over [0, 2 pi) for noiseless statistics at phi",
    tags={"estimation", "read"},
    annotations={"title": "Ambiguity Scan", "readOnlyHint": True},
)
async def ambiguity_scan(
    kind: str,
    j_max: int,
    phi: float,
    samples: int = 1024,
    r1: float | None = None,
    r2: float | None = None,
    n: float | None = None,
    ctx: Context = None,
    engine: PhaseFitEngine = Depends(get_engine),
) -> dict:
    """
    Scan the fit objective over a full turn.

    Args:
        kind: State class (noon, substate, noonvac or general)
        j_max: Largest j; the top N00N component holds 2*j_max photons
        r1: Sub-harmonic weight (substate, general)
        r2: Top N00N weight (general)
        n: N00N-vac parameter (noonvac)
        phi: Phase the noiseless statistics are taken at (radian)
        samples: Scan points on [0, 2 pi)
        ctx: MCP context (injected)
        engine: phasefit engine (injected)

    Returns:
        Scan grid and objective values
    """
    try:
        await ctx.info(f"Scanning objective at {samples} points for phi={phi}")
        spec = StateSpec.from_args(kind, j_max, r1=r1, r2=r2, n=n)
        result = await engine.ambiguity(spec, phi, samples)
        await ctx.info("✓ Scan complete")
        return result
    except (PhaseFitError, ValueError) as e:
        await ctx.error(f"Failed to scan objective: {e}")
        raise
