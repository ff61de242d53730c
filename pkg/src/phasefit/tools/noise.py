"""MCP tools for the AWGN robustness study."""

from fastmcp import Context
from fastmcp.dependencies import Depends

from ..application import mcp
from ..dependencies import get_engine
from ..engine import PhaseFitEngine
from ..models.state import StateSpec
from ..utils.errors import PhaseFitError


@mcp.tool(
    name="noise_sweep",
    description=(
        "Mean, mean-absolute and spread of the phase-estimation error across "
        "Monte-Carlo trials, one row per AWGN power"
    ),
    tags={"noise", "compute"},
    annotations={"title": "Noise Sweep", "readOnlyHint": True},
)
async def noise_sweep(
    kind: str,
    j_max: int,
    sigma2: list[float],
    phi_true: float | None = None,
    seed: int | None = None,
    trials_mean: int | None = None,
    trials_abs: int | None = None,
    r1: float | None = None,
    r2: float | None = None,
    n: float | None = None,
    ctx: Context = None,
    engine: PhaseFitEngine = Depends(get_engine),
) -> dict:
    """
    Sweep the noise power, reporting progress per row.

    Args:
        kind: State class (noon, substate, noonvac or general)
        j_max: Largest j; the top N00N component holds 2*j_max photons
        r1: Sub-harmonic weight (substate, general)
        r2: Top N00N weight (general)
        n: N00N-vac parameter (noonvac)
        sigma2: AWGN powers, one row each in this order
        phi_true: True phase (radian), middle of the search domain when omitted
        seed: Master seed (defaults to settings)
        trials_mean: Trials behind the signed-error statistics
        trials_abs: Trials behind the mean absolute error
        ctx: MCP context (injected)
        engine: phasefit engine (injected)

    Returns:
        State spec and one row per noise power, flagged when biased
    """
    try:
        spec = StateSpec.from_args(kind, j_max, r1=r1, r2=r2, n=n)
        if not sigma2:
            raise ValueError("sigma2 must list at least one noise power")
        await ctx.info(f"Sweeping {len(sigma2)} noise powers for {kind} j_max={j_max}")

        rows = []
        for index, power in enumerate(sigma2):
            [row] = await engine.sweep(
                spec,
                [power],
                phi_true,
                seed=seed,
                trials_mean=trials_mean,
                trials_abs=trials_abs,
            )
            if row.biased:
                await ctx.warning(
                    f"sigma2={power:g}: biased mean error, "
                    f"{row.edge_fraction:.1%} of estimates on a domain endpoint"
                )
            rows.append(row.model_dump(mode="json"))
            await ctx.report_progress(progress=index + 1, total=len(sigma2))

        await ctx.info(f"✓ Completed {len(rows)} rows")
        return {"spec": spec.model_dump(mode="json", exclude_none=True), "rows": rows}
    except (PhaseFitError, ValueError) as e:
        await ctx.error(f"Failed noise sweep: {e}")
        raise
