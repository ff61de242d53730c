"""Async facade over the phasefit numerics, shared by the MCP tools."""

import asyncio
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from typing import Any

from . import noise
from .config import PhaseFitConfig
from .models.estimation import EstimationResult, MeasurementDistribution
from .models.noise import SweepRow
from .models.phase import MetricReport
from .models.state import StateKind, StateSpec
from .phase_rep import metric_report, pdf_grid
from .pffa import ambiguity_scan
from .rotation import interferometer_probs, mean_number_difference
from .states import build_state, expected_j, fock_occupations, m_gap, photon_cost
from .utils.errors import AperiodicStateError


class PhaseFitEngine:
    """Runs CPU-bound computations off the event loop with a shared trial pool."""

    def __init__(self, config: PhaseFitConfig):
        """
        Initialize engine.

        Args:
            config: Numerical and runtime settings
        """
        self.config = config
        self._executor: ThreadPoolExecutor | None = None
        self._users = 0

    async def __aenter__(self) -> "PhaseFitEngine":
        """Context manager entry - start the trial pool."""
        self._users += 1
        if self.config.threads > 1 and self._executor is None:
            self._executor = ThreadPoolExecutor(
                max_workers=self.config.threads, thread_name_prefix="phasefit-trial"
            )
        return self

    async def __aexit__(self, *args: Any) -> None:
        """Context manager exit - stop the trial pool once the last user leaves."""
        self._users -= 1
        if self._users == 0 and self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    async def _run(self, fn: Callable[..., Any], *args: Any, **kwargs: Any) -> Any:
        return await asyncio.to_thread(fn, *args, **kwargs)

    async def smoke_check(self) -> MetricReport:
        """Metrics of the smallest N00N state; fails if the numerics are broken."""
        return await self.metrics(StateSpec.noon(1))

    # States

    async def describe_state(self, spec: StateSpec) -> dict:
        """
        Components of a state with their Fock occupations.

        Returns:
            Dict with entries, photon cost and m-gap (None for single-m states)
        """
        state = build_state(spec)
        entries = []
        for entry in state.entries:
            n_u, n_d = fock_occupations(entry)
            entries.append(
                {
                    "j": entry.j,
                    "m": entry.m,
                    "amplitude": [entry.amp.real, entry.amp.imag],
                    "fock": [n_u, n_d],
                }
            )
        try:
            gap: float | None = m_gap(state)
        except AperiodicStateError:
            gap = None
        return {
            "spec": spec.model_dump(mode="json", exclude_none=True),
            "entries": entries,
            "expected_j": expected_j(state),
            "photon_cost": photon_cost(state),
            "m_gap": gap,
        }

    async def pdf(self, spec: StateSpec, samples: int) -> dict:
        phis, values = await self._run(pdf_grid, build_state(spec), samples)
        return {"phi": phis.tolist(), "pdf": values.tolist()}

    async def metrics(self, spec: StateSpec) -> MetricReport:
        return await self._run(metric_report, spec, self.config)

    async def statistics(self, spec: StateSpec, phi: float) -> dict:
        dist = interferometer_probs(build_state(spec), phi)
        return {
            "distribution": dist.model_dump(mode="json"),
            "mean_number_difference": mean_number_difference(dist),
        }

    # Estimation

    async def estimate(
        self,
        spec: StateSpec,
        phi: float,
        sigma2: float = 0.0,
        seed: int | None = None,
        domain: tuple[float, float] | None = None,
    ) -> tuple[MeasurementDistribution, EstimationResult]:
        estimation = self.config.estimation_config(domain=domain)
        return await self._run(
            noise.single_estimate,
            spec,
            phi,
            sigma2,
            self.config.seed if seed is None else seed,
            estimation,
        )

    async def ambiguity(
        self,
        spec: StateSpec,
        phi: float,
        samples: int = 1024,
    ) -> dict:
        """Objective over [0, 2 pi) for noiseless statistics taken at phi."""
        measured = interferometer_probs(build_state(spec), phi)
        xs, values = await self._run(ambiguity_scan, measured, spec, samples)
        return {"phi": phi, "x": xs.tolist(), "objective": values.tolist()}

    # Noise

    async def sweep(
        self,
        spec: StateSpec,
        sigma2_list: list[float],
        phi_true: float | None = None,
        seed: int | None = None,
        trials_mean: int | None = None,
        trials_abs: int | None = None,
    ) -> list[SweepRow]:
        """
        Noise sweep on the engine's trial pool.

        Args:
            spec: State fed to the interferometer
            sigma2_list: AWGN powers, rows follow this order
            phi_true: True phase (radian), middle of the search domain when omitted
            seed: Master seed (defaults to settings)
            trials_mean: Trials for the signed-error average
            trials_abs: Trials for the absolute-error average

        Returns:
            One row per noise power
        """
        base = self.config.noise_config(
            sigma2=0.0,
            phi_true=phi_true,
            seed=seed,
            trials_mean=trials_mean,
            trials_abs=trials_abs,
        )
        return await self._run(
            noise.sweep,
            spec,
            sigma2_list,
            base,
            self.config.estimation_config(),
            executor=self._executor,
        )

    @staticmethod
    def catalog() -> list[dict]:
        """State classes and the parameters each one takes."""
        return [
            {"kind": StateKind.NOON.value, "parameters": ["j_max"]},
            {"kind": StateKind.SUBSTATE.value, "parameters": ["j_max (even)", "r1 >= 0"]},
            {"kind": StateKind.NOON_VAC.value, "parameters": ["j_max", "n > 0"]},
            {"kind": StateKind.GENERAL.value, "parameters": ["j_max", "r1 >= 0", "r2 > 0"]},
        ]
