"""MCP tools for phase-representation metrics."""

from fastmcp import Context
from fastmcp.dependencies import Depends

from ..application import mcp
from ..dependencies import get_engine
from ..engine import PhaseFitEngine
from ..models.state import StateSpec
from ..utils.errors import PhaseFitError


@mcp.tool(
    name="phase_metrics",
    description=(
        "Peak, visibility, HWHM and bin-variance of the phase PDF, "
        "numerical values next to their closed forms"
    ),
    tags={"metrics", "read"},
    annotations={"title": "Phase Metrics", "readOnlyHint": True},
)
async def phase_metrics(
    kind: str,
    j_max: int,
    r1: float | None = None,
    r2: float | None = None,
    n: float | None = None,
    ctx: Context = None,
    engine: PhaseFitEngine = Depends(get_engine),
) -> dict:
    """
    Compute the metric report of a state.

    Args:
        kind: State class (noon, substate, noonvac or general)
        j_max: Largest j; the top N00N component holds 2*j_max photons
        r1: Sub-harmonic weight (substate, general)
        r2: Top N00N weight (general)
        n: N00N-vac parameter (noonvac)
        ctx: MCP context (injected)
        engine: phasefit engine (injected)

    Returns:
        Metric report with numerical values, closed forms and agreement flags
    """
    try:
        await ctx.info(f"Computing metrics of {kind} j_max={j_max}")
        spec = StateSpec.from_args(kind, j_max, r1=r1, r2=r2, n=n)
        report = await engine.metrics(spec)

        disagreeing = [name for name, twin in report.twins().items() if twin.agree is False]
        if disagreeing:
            await ctx.warning(f"Closed forms disagree for: {', '.join(disagreeing)}")
        if not report.hwhm.defined:
            await ctx.warning("HWHM undefined: PDF minimum exceeds half the peak")
        await ctx.info("✓ Computed metric report")
        return report.model_dump(mode="json")
    except (PhaseFitError, ValueError) as e:
        await ctx.error(f"Failed to compute metrics: {e}")
        raise
