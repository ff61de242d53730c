"""MCP tools for states, phase PDFs and interferometer statistics."""

from fastmcp import Context
from fastmcp.dependencies import Depends

from ..application import mcp
from ..dependencies import get_engine
from ..engine import PhaseFitEngine
from ..models.state import StateSpec
from ..utils.errors import PhaseFitError


@mcp.tool(
    name="build_state",
    description="Build a state and list its |j, m> components with Fock occupations",
    tags={"states", "read"},
    annotations={"title": "Build State", "readOnlyHint": True},
)
async def build_state(
    kind: str,
    j_max: int,
    r1: float | None = None,
    r2: float | None = None,
    n: float | None = None,
    ctx: Context = None,
    engine: PhaseFitEngine = Depends(get_engine),
) -> dict:
    """
    Build a state from its specification.

    Args:
        kind: State class (noon, substate, noonvac or general)
        j_max: Largest j; the top N00N component holds 2*j_max photons
        r1: Sub-harmonic weight (substate, general)
        r2: Top N00N weight (general)
        n: N00N-vac parameter (noonvac)
        ctx: MCP context (injected)
        engine: phasefit engine (injected)

    Returns:
        Components with j, m, amplitude and Fock occupations, plus photon cost and m-gap
    """
    try:
        await ctx.info(f"Building {kind} state with j_max={j_max}")
        spec = StateSpec.from_args(kind, j_max, r1=r1, r2=r2, n=n)
        result = await engine.describe_state(spec)
        await ctx.info(f"✓ Built state with {len(result['entries'])} components")
        return result
    except (PhaseFitError, ValueError) as e:
        await ctx.error(f"Failed to build {kind} state: {e}")
        raise


@mcp.tool(
    name="phase_pdf_grid",
    description="Sample the phase PDF P(phi) on a uniform grid of [-pi, pi)",
    tags={"states", "read"},
    annotations={"title": "Phase PDF", "readOnlyHint": True},
)
async def phase_pdf_grid(
    kind: str,
    j_max: int,
    samples: int = 1024,
    r1: float | None = None,
    r2: float | None = None,
    n: float | None = None,
    ctx: Context = None,
    engine: PhaseFitEngine = Depends(get_engine),
) -> dict:
    """
    Sample the phase PDF of a state.

    Args:
        kind: State class (noon, substate, noonvac or general)
        j_max: Largest j; the top N00N component holds 2*j_max photons
        r1: Sub-harmonic weight (substate, general)
        r2: Top N00N weight (general)
        n: N00N-vac parameter (noonvac)
        samples: Grid points on [-pi, pi)
        ctx: MCP context (injected)
        engine: phasefit engine (injected)

    Returns:
        Phase grid and PDF values
    """
    try:
        await ctx.info(f"Sampling phase PDF of {kind} j_max={j_max} at {samples} points")
        spec = StateSpec.from_args(kind, j_max, r1=r1, r2=r2, n=n)
        result = await engine.pdf(spec, samples)
        await ctx.info(f"✓ Sampled {samples} points")
        return result
    except (PhaseFitError, ValueError) as e:
        await ctx.error(f"Failed to sample phase PDF: {e}")
        raise


@mcp.tool(
    name="interferometer_statistics",
    description="Number-difference statistics P_m of the interferometer at a phase",
    tags={"states", "read"},
    annotations={"title": "Interferometer Statistics", "readOnlyHint": True},
)
async def interferometer_statistics(
    kind: str,
    j_max: int,
    phi: float,
    r1: float | None = None,
    r2: float | None = None,
    n: float | None = None,
    ctx: Context = None,
    engine: PhaseFitEngine = Depends(get_engine),
) -> dict:
    """
    Compute P_m at phase phi.

    Args:
        kind: State class (noon, substate, noonvac or general)
        j_max: Largest j; the top N00N component holds 2*j_max photons
        r1: Sub-harmonic weight (substate, general)
        r2: Top N00N weight (general)
        n: N00N-vac parameter (noonvac)
        phi: Relative arm phase (radian)
        ctx: MCP context (injected)
        engine: phasefit engine (injected)

    Returns:
        Distribution keyed by doubled m and the mean number difference
    """
    try:
        await ctx.info(f"Rotating {kind} j_max={j_max} by phi={phi}")
        spec = StateSpec.from_args(kind, j_max, r1=r1, r2=r2, n=n)
        result = await engine.statistics(spec, phi)
        await ctx.info(f"✓ Computed {len(result['distribution']['probs'])} probabilities")
        return result
    except (PhaseFitError, ValueError) as e:
        await ctx.error(f"Failed to compute statistics: {e}")
        raise
