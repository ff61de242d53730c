"""
phasefit command line.

Every subcommand writes its data (CSV or JSON) to --out or stdout and a
RunManifest next to it; status lines go to stderr.

Example:
  phasefit pdf --spec-kind noon --jmax 4 --samples 8
  phasefit noise-sweep --jmax 2 --sigma2 1e-6 1e-4 --trials-mean 4000 --out sweep.csv
"""

import argparse
import csv
import io
import json
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from . import __version__, noise
from .config import PhaseFitConfig
from .models.common import RunManifest
from .models.estimation import EstimationConfig
from .models.noise import SWEEP_COLUMNS, SweepRow
from .models.state import StateSpec
from .phase_rep import metric_report, pdf_grid
from .pffa import ambiguity_scan
from .rotation import interferometer_probs
from .states import build_state
from .utils.errors import (
    AngularMomentumError,
    AperiodicStateError,
    PhaseFitError,
    StateSpecError,
    UnsupportedStateError,
)
from .validation import first_failure, run_suite

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# Settings a --config file or a flag may override
SETTING_FLAGS = (
    "seed",
    "threads",
    "coarse_grid",
    "refine_tol",
    "domain_lo",
    "domain_hi",
    "trials_mean",
    "trials_abs",
)
DEFAULT_SIGMA2 = [10.0**k for k in range(-8, -1)]

USAGE_ERRORS = (
    StateSpecError,
    AperiodicStateError,
    UnsupportedStateError,
    AngularMomentumError,
    ValidationError,
    ValueError,
)


class UsageError(Exception):
    """Invalid combination of command-line inputs."""

    pass


class Status:
    """Diagnostic lines on stderr, silenced by --quiet."""

    def __init__(self, quiet: bool):
        self.quiet = quiet

    def info(self, message: str) -> None:
        if not self.quiet:
            print(f"  {message}", file=sys.stderr)

    def ok(self, message: str) -> None:
        if not self.quiet:
            print(f"✓ {message}", file=sys.stderr)

    def warn(self, message: str) -> None:
        if not self.quiet:
            print(f"⚠ {message}", file=sys.stderr)

    def fail(self, message: str) -> None:
        print(f"✗ {message}", file=sys.stderr)


class Run:
    """Effective inputs of one invocation: flags merged over --config over settings."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.file_values = load_config_file(args.config)
        recorded = self.file_values.pop("command", None)
        if recorded is not None and recorded != args.command:
            raise UsageError(f"Config file was recorded by '{recorded}', not '{args.command}'")
        # Settings captured in a manifest sit below the file values and flags
        overrides: dict[str, Any] = dict(self.file_values.pop("settings", None) or {})
        for name in SETTING_FLAGS:
            value = self.option(name)
            if value is not None:
                overrides[name] = value
        self.settings = PhaseFitConfig(**overrides)
        self.status = Status(bool(self.option("quiet")))

    def option(self, name: str, default: Any = None) -> Any:
        value = getattr(self.args, name, None)
        if value is None:
            value = self.file_values.get(name)
        return default if value is None else value

    def spec(self) -> StateSpec:
        return StateSpec.from_args(
            self.option("spec_kind", "noon"),
            self.option("jmax", 2),
            r1=self.option("r1"),
            r2=self.option("r2"),
            n=self.option("n"),
        )

    def parameters(self) -> dict[str, Any]:
        """Everything needed to reproduce the data, settings included."""
        values = {
            key: value
            for key, value in vars(self.args).items()
            if key not in ("config", "out", "quiet", "handler") and value is not None
        }
        for key, value in self.file_values.items():
            values.setdefault(key, value)
        values["settings"] = self.settings.model_dump(mode="json", exclude={"host", "port"})
        return values

    def format_float(self, value: float) -> str:
        return f"{value:.{self.settings.csv_digits}g}"


def load_config_file(path: Path | None) -> dict[str, Any]:
    """
    Read a --config JSON file whose keys mirror the long flags.

    A RunManifest is accepted as well: its recorded parameters are returned,
    with the effective settings under ``settings`` and the subcommand under
    ``command``, so a run can be replayed from its sidecar.

    Raises:
        UsageError: If the file is missing or not a JSON object
    """
    if path is None:
        return {}
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"Cannot read config file {path}: {e}") from e
    if not isinstance(payload, dict):
        raise UsageError(f"Config file {path} must hold a JSON object")
    if "parameters" in payload and "output_checksum" in payload:
        manifest = RunManifest.model_validate(payload)
        payload = {**manifest.parameters, "command": manifest.command}
    return {key.lstrip("-").replace("-", "_"): value for key, value in payload.items()}


def render_csv(run: Run, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [run.format_float(v) if isinstance(v, float) else v for v in row]
        )
    return buffer.getvalue().encode("utf-8")


def render_json(payload: Any) -> bytes:
    return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("utf-8")


def emit(run: Run, command: str, data: bytes) -> None:
    """Write data and its manifest (sidecar file, or stderr when data goes to stdout)."""
    manifest = RunManifest(
        command=command,
        parameters=run.parameters(),
        seed=run.settings.seed,
        version=__version__,
        output_checksum=RunManifest.checksum(data),
    )
    text = manifest.model_dump_json(indent=2) + "\n"

    out: Path | None = run.args.out
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        sys.stderr.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(data)
    sidecar = out.with_name(out.name + ".manifest.json")
    sidecar.write_text(text, encoding="utf-8")
    run.status.ok(f"Wrote {out} and {sidecar.name}")


# Commands


def cmd_pdf(run: Run) -> int:
    spec = run.spec()
    samples = run.option("samples", 1024)
    phis, values = pdf_grid(build_state(spec), samples)
    run.status.ok(f"Sampled phase PDF of {spec.kind.value} j_max={spec.j_max} at {samples} points")
    if run.option("format", "csv") == "json":
        data = render_json(
            {
                "spec": spec.model_dump(mode="json", exclude_none=True),
                "phi": phis.tolist(),
                "pdf": values.tolist(),
            }
        )
    else:
        data = render_csv(run, ("phi", "pdf"), [(float(p), float(v)) for p, v in zip(phis, values)])
    emit(run, "pdf", data)
    return EXIT_OK


def cmd_metrics(run: Run) -> int:
    spec = run.spec()
    report = metric_report(spec, run.settings)
    for name, twin in report.twins().items():
        if twin.agree is False:
            note = twin.note or "no note"
            run.status.warn(f"{name}: numerical and closed form disagree ({note})")
        elif not twin.defined:
            run.status.warn(f"{name}: undefined for this state")
    run.status.ok(f"Computed metrics of {spec.kind.value} j_max={spec.j_max}")

    if run.option("format", "json") == "csv":
        rows = [
            (name, twin.numerical, twin.closed_form, twin.defined, twin.agree)
            for name, twin in report.twins().items()
        ]
        data = render_csv(run, ("metric", "numerical", "closed_form", "defined", "agree"), rows)
    else:
        data = render_json(report.model_dump(mode="json"))
    emit(run, "metrics", data)
    return EXIT_OK


def _estimation(run: Run) -> EstimationConfig:
    return run.settings.estimation_config()


def cmd_estimate(run: Run) -> int:
    spec = run.spec()
    phi = run.option("phi")
    if phi is None:
        raise UsageError("--phi is required")
    sigma2 = run.option("sigma2", 0.0)
    estimation = _estimation(run)
    a, b = estimation.domain
    if not a <= phi <= b:
        raise UsageError(f"--phi {phi} lies outside the search domain [{a}, {b}]")

    _, result = noise.single_estimate(
        spec, phi, sigma2, run.settings.seed, estimation, clamped=bool(run.option("clamp"))
    )
    run.status.ok(f"Estimate {result.estimate!r} (error {result.estimate - phi:.3e})")

    if run.option("format", "json") == "csv":
        data = render_csv(
            run,
            ("estimate", "residual", "evaluations"),
            [(result.estimate, result.residual, result.evaluations)],
        )
    else:
        data = render_json(result.model_dump(mode="json"))
    emit(run, "estimate", data)
    return EXIT_OK


def cmd_noise_sweep(run: Run) -> int:
    spec = run.spec()
    sigma2_list = list(run.option("sigma2", DEFAULT_SIGMA2))
    repeats = run.option("repeats", 1)
    clamped = bool(run.option("clamp"))
    estimation = _estimation(run)
    base = run.settings.noise_config(sigma2=0.0, phi_true=run.option("phi"))
    run.status.info(
        f"{len(sigma2_list)} noise powers x {repeats} run(s), "
        f"{base.trials_mean}/{base.trials_abs} trials, seed {base.seed}"
    )

    def on_row(index: int, row: SweepRow) -> None:
        run.status.ok(f"sigma2={row.sigma2:g} mean_abs_error={row.mean_abs_error:.3e}")
        if row.biased:
            run.status.warn(
                f"sigma2={row.sigma2:g}: mean error {row.mean_error:.3e} is biased, "
                f"{row.edge_fraction:.1%} of estimates on a domain endpoint"
            )

    labelled: list[tuple[int, SweepRow]] = []
    if repeats == 1:
        rows = noise.sweep(
            spec,
            sigma2_list,
            base,
            estimation,
            threads=run.settings.threads,
            clamped=clamped,
            on_row=on_row,
        )
        labelled = [(0, row) for row in rows]
    else:
        for sigma2 in sigma2_list:
            config = base.model_copy(update={"sigma2": sigma2})
            rows = noise.repeated_runs(
                spec, config, estimation, repeats, threads=run.settings.threads, clamped=clamped
            )
            for r, row in enumerate(rows):
                on_row(r, row)
                labelled.append((r, row))

    if run.option("format", "csv") == "json":
        payload = [row.model_dump(mode="json") for _, row in labelled]
        if repeats > 1:
            payload = [{"repeat": r, **item} for (r, _), item in zip(labelled, payload)]
        data = render_json(payload)
    elif repeats > 1:
        data = render_csv(
            run, ("repeat", *SWEEP_COLUMNS), [(r, *row.csv_values()) for r, row in labelled]
        )
    else:
        data = render_csv(run, SWEEP_COLUMNS, [row.csv_values() for _, row in labelled])
    emit(run, "noise-sweep", data)
    return EXIT_OK


def cmd_ambiguity(run: Run) -> int:
    spec = run.spec()
    phi = run.option("phi")
    if phi is None:
        raise UsageError("--phi is required")
    samples = run.option("samples", 1024)
    measured = interferometer_probs(build_state(spec), phi)
    xs, values = ambiguity_scan(measured, spec, samples)

    zeros = [float(x) for x, v in zip(xs, values) if v <= 1e-20]
    if zeros:
        run.status.warn(f"Objective vanishes at {len(zeros)} scan point(s)")
    run.status.ok(f"Scanned objective at {samples} points")

    if run.option("format", "csv") == "json":
        data = render_json({"phi": phi, "x": xs.tolist(), "objective": values.tolist()})
    else:
        data = render_csv(
            run, ("x", "objective"), [(float(x), float(v)) for x, v in zip(xs, values)]
        )
    emit(run, "ambiguity", data)
    return EXIT_OK


def cmd_validate(run: Run) -> int:
    results = run_suite(run.settings)
    as_json = bool(run.option("json")) or run.option("format") == "json"
    if as_json:
        data = render_json([result.model_dump(mode="json") for result in results])
    else:
        lines = [f"{'check':<28} {'status':<6} {'worst':>24} {'tolerance':>24}"]
        for result in results:
            worst = "-" if result.worst is None else f"{result.worst:.6e}"
            lines.append(
                f"{result.name:<28} {'PASS' if result.passed else 'FAIL':<6} "
                f"{worst:>24} {result.tolerance:>24.6e}"
            )
        data = ("\n".join(lines) + "\n").encode("utf-8")
    emit(run, "validate", data)

    failure = first_failure(results)
    if failure is not None:
        run.status.fail(str(failure))
        return EXIT_FAILURE
    run.status.ok(f"All {len(results)} invariants hold")
    return EXIT_OK


# Parser


def _shared() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    group = shared.add_argument_group("state")
    group.add_argument("--spec-kind", dest="spec_kind", help="noon, substate, noonvac or general")
    group.add_argument("--jmax", type=int, help="Largest j (2*jmax photons)")
    group.add_argument("--r1", type=float, help="Sub-harmonic weight")
    group.add_argument("--r2", type=float, help="Top N00N weight (general states)")
    group.add_argument("--n", type=float, help="N00N-vac parameter")

    group = shared.add_argument_group("run")
    group.add_argument("--seed", type=int)
    group.add_argument("--out", type=Path, help="Data file (default: stdout)")
    group.add_argument("--format", choices=("csv", "json"))
    group.add_argument("--threads", type=int)
    group.add_argument("--config", type=Path, help="JSON file whose keys mirror the flags")
    group.add_argument("--quiet", action="store_true", default=None)
    return shared


def _estimation_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("estimation")
    group.add_argument("--domain-lo", dest="domain_lo", type=float)
    group.add_argument("--domain-hi", dest="domain_hi", type=float)
    group.add_argument("--coarse-grid", dest="coarse_grid", type=int)
    group.add_argument("--refine-tol", dest="refine_tol", type=float)
    group.add_argument(
        "--clamp",
        action="store_true",
        default=None,
        help="Project noisy statistics onto valid probabilities before fitting",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasefit",
        description="Phase representation, phase function fitting and AWGN robustness",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)
    shared = _shared()

    pdf = commands.add_parser("pdf", parents=[shared], help="Phase PDF on [-pi, pi)")
    pdf.add_argument("--samples", type=int)
    pdf.set_defaults(handler=cmd_pdf)

    metrics = commands.add_parser("metrics", parents=[shared], help="Metrics and closed forms")
    metrics.set_defaults(handler=cmd_metrics)

    estimate = commands.add_parser("estimate", parents=[shared], help="Simulate, perturb, fit")
    estimate.add_argument("--phi", type=float)
    estimate.add_argument("--sigma2", type=float)
    _estimation_flags(estimate)
    estimate.set_defaults(handler=cmd_estimate)

    sweep = commands.add_parser("noise-sweep", parents=[shared], help="AWGN robustness sweep")
    sweep.add_argument("--sigma2", type=float, nargs="+")
    sweep.add_argument("--phi", type=float, help="True phase (default: middle of the domain)")
    sweep.add_argument("--trials-mean", dest="trials_mean", type=int)
    sweep.add_argument("--trials-abs", dest="trials_abs", type=int)
    sweep.add_argument("--repeats", type=int, help="Independent runs per noise power")
    _estimation_flags(sweep)
    sweep.set_defaults(handler=cmd_noise_sweep)

    ambiguity = commands.add_parser("ambiguity", parents=[shared], help="Objective over [0, 2pi)")
    ambiguity.add_argument("--phi", type=float)
    ambiguity.add_argument("--samples", type=int)
    ambiguity.set_defaults(handler=cmd_ambiguity)

    validate = commands.add_parser("validate", parents=[shared], help="Run the invariant suite")
    validate.add_argument("--json", action="store_true", default=None)
    validate.set_defaults(handler=cmd_validate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point for the phasefit command line."""
    args = build_parser().parse_args(argv)
    handler: Callable[[Run], int] = args.handler
    try:
        run = Run(args)
        return handler(run)
    except UsageError as e:
        Status(False).fail(str(e))
        return EXIT_USAGE
    except PhaseFitError as e:
        code = EXIT_USAGE if isinstance(e, USAGE_ERRORS) else EXIT_FAILURE
        Status(False).fail(f"{type(e).__name__}: {e}")
        return code
    except USAGE_ERRORS as e:
        Status(False).fail(f"Invalid input: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
