"""
Phase function fitting.

The measured 2j+1 number-difference probabilities are matched, in the least
squares sense, against the statistics f_m(x) the same state would produce at a
trial phase x. A coarse scan over the search domain locates the basin and
golden-section search refines it.
"""

import math
import threading
from collections import OrderedDict
from functools import lru_cache

import numpy as np

from .models.estimation import EstimationConfig, EstimationResult, MeasurementDistribution
from .models.state import StateSpec
from .numerics import golden_section_minimize
from .rotation import interferometer_probs, rotation_plan
from .states import QuantumState, build_state
from .utils.errors import EstimationError

TWO_PI = 2 * math.pi
# Coarse grids kept per state, least recently used evicted first
GRID_CACHE_SIZE = 8


class TemplateModel:
    """Template statistics f_m(x) of one state, with memoized coarse grids."""

    def __init__(self, spec: StateSpec):
        self.spec = spec
        self.state: QuantumState = build_state(spec)
        self.plan = rotation_plan(self.state)
        self.support = self.plan.support
        self._grids: OrderedDict[tuple[float, float, int], np.ndarray] = OrderedDict()
        self._lock = threading.Lock()

    def aligned(self, measured: MeasurementDistribution) -> tuple[np.ndarray, list[int]]:
        """
        Measured vector over the template support plus any extra measured m.

        Returns:
            Tuple of (measured values, template columns; -1 marks an m the
            state never reaches, whose template value is 0)
        """
        extra = sorted(set(measured.support) - set(self.support))
        keys = list(self.support) + extra
        columns = list(range(len(self.support))) + [-1] * len(extra)
        return np.array([measured.probs.get(k, 0.0) for k in keys]), columns

    def grid(self, config: EstimationConfig) -> np.ndarray:
        key = (config.domain[0], config.domain[1], config.coarse_grid)
        with self._lock:
            if key in self._grids:
                self._grids.move_to_end(key)
                return self._grids[key]
        values = self.plan.probabilities(config.grid())
        values.setflags(write=False)
        with self._lock:
            self._grids[key] = values
            while len(self._grids) > GRID_CACHE_SIZE:
                self._grids.popitem(last=False)
        return values

    def objective(self, x: float, measured: np.ndarray, columns: list[int]) -> float:
        f = self.plan.probabilities(np.array([x]))[0]
        template = np.array([f[c] if c >= 0 else 0.0 for c in columns])
        return math.fsum((measured - template) ** 2)

    def grid_objective(
        self, templates: np.ndarray, measured: np.ndarray, columns: list[int]
    ) -> np.ndarray:
        padded = np.zeros((templates.shape[0], len(columns)))
        known = [k for k, c in enumerate(columns) if c >= 0]
        padded[:, known] = templates[:, [columns[k] for k in known]]
        return ((padded - measured) ** 2).sum(axis=1)


@lru_cache(maxsize=64)
def template_model(spec: StateSpec) -> TemplateModel:
    return TemplateModel(spec)


def template_probs(spec: StateSpec, x: float) -> MeasurementDistribution:
    """f_m(x) = |Psi_m(x)|^2, the statistics the spec's state produces at phase x."""
    return interferometer_probs(template_model(spec).state, x)


def lms_objective(measured: MeasurementDistribution, spec: StateSpec, x: float) -> float:
    """
    sum_m (P_m - f_m(x))^2 over the union of measured and template m values.

    Missing entries count as 0; noisy or negative probabilities are accepted.
    """
    template = template_probs(spec, x)
    keys = set(measured.probs) | set(template.probs)
    return math.fsum(
        (measured.probs.get(k, 0.0) - template.probs.get(k, 0.0)) ** 2 for k in keys
    )


def estimate_phase(
    measured: MeasurementDistribution,
    spec: StateSpec,
    config: EstimationConfig,
) -> EstimationResult:
    """
    Least-squares estimate of the phase behind measured statistics.

    The coarse grid includes both domain endpoints; equal coarse minima resolve
    to the smaller x. Refinement runs on the bracket between the neighbours of
    the best node and never returns a point worse than that node.

    Args:
        measured: Measured (possibly noisy) statistics
        spec: State the interferometer was fed with
        config: Search domain and tolerances

    Returns:
        Estimate, residual and number of objective evaluations

    Raises:
        EstimationError: If the objective is not finite somewhere on the grid
    """
    model = template_model(spec)
    values, columns = model.aligned(measured)
    xs = config.grid()
    scores = model.grid_objective(model.grid(config), values, columns)

    bad = np.nonzero(~np.isfinite(scores))[0]
    if bad.size:
        raise EstimationError(float(xs[bad[0]]), "objective is not finite")

    k = int(np.argmin(scores))
    lo = float(xs[max(k - 1, 0)])
    hi = float(xs[min(k + 1, xs.size - 1)])

    def objective(x: float) -> float:
        return model.objective(x, values, columns)

    x, residual, evaluations = golden_section_minimize(objective, lo, hi, config.refine_tol)
    node = float(xs[k])
    node_residual = objective(node)
    if node_residual <= residual:
        x, residual = node, node_residual

    a, b = config.domain
    return EstimationResult(
        estimate=min(max(x, a), b),
        residual=max(residual, 0.0),
        evaluations=xs.size + evaluations + 1,
    )


def ambiguity_scan(
    measured: MeasurementDistribution,
    spec: StateSpec,
    samples: int = 1024,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Objective over x in [0, 2 pi), exposing every phase the statistics cannot tell apart.

    Returns:
        Tuple of (x values, objective values)
    """
    model = template_model(spec)
    values, columns = model.aligned(measured)
    xs = TWO_PI * np.arange(samples) / samples
    templates = model.plan.probabilities(xs)
    return xs, model.grid_objective(templates, values, columns)
