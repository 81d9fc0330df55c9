"""Command line interface for entanglement entropies, sweeps, figures and verification."""

import argparse
import asyncio
import logging
import sys
from pathlib import Path

import coloredlogs
import numpy as np
from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError

from frw_entanglement import bogoliubov, modesolver
from frw_entanglement.cosmology import (
    ExpansionParams,
    ModeParams,
    Spin,
    Statistics,
    frequencies,
)
from frw_entanglement.entanglement import REPRESENTATIVE_SPIN, CoefficientSource
from frw_entanglement.pipeline.figures import (
    PEAK_COLUMNS,
    FigureName,
    figure_data,
    peak_curve,
)
from frw_entanglement.pipeline.sweep import (
    GridPoint,
    SweepGrid,
    evaluate_point,
    rows_to_csv,
    run_sweep,
    write_csv,
)
from frw_entanglement.pipeline.verify import VerifyLevel, run_verify
from frw_entanglement.utils import ComplexVal, FrwEntanglementError, RunSettings

logger = logging.getLogger("catalystcoop.frw_entanglement")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2
COEFFICIENT_METHODS = ["paper", "canonical", "ode"]


class ArgumentParser(argparse.ArgumentParser):
    """Parser that reports usage errors with exit code 1."""

    def error(self, message):
        """Print usage and exit with the usage-error code."""
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class CoefficientReport(BaseModel):
    """Bogoliubov coefficients as printed by the ``bogoliubov`` subcommand."""

    method: str
    statistics: Statistics
    alpha: ComplexVal
    beta: ComplexVal
    alpha_sq: float
    beta_sq: float
    x: float


def _add_mode_arguments(parser: argparse.ArgumentParser):
    for name in ("m", "k", "epsilon", "rho"):
        parser.add_argument(f"--{name}", type=float, required=True)


def parse_main(args=None):
    """Process base commands from the CLI."""
    common = ArgumentParser(add_help=False)
    common.add_argument(
        "--workers",
        type=int,
        help="Worker processes for sweeps (default: $FRW_ENTANGLEMENT_WORKERS or 1).",
    )
    common.add_argument(
        "--verbose", action="store_true", help="Log per-integration detail."
    )
    common.add_argument(
        "--no-progress", action="store_true", help="Hide sweep progress bars."
    )

    parser = ArgumentParser(
        description="Entanglement of particle pairs created by a tanh FRW expansion"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    entropy = subparsers.add_parser(
        "entropy", parents=[common], help="Entropy of one mode pair as a CSV row."
    )
    entropy.add_argument("--spin", type=Spin, required=True, choices=list(Spin))
    _add_mode_arguments(entropy)
    entropy.add_argument(
        "--method",
        type=CoefficientSource,
        choices=list(CoefficientSource),
        default=CoefficientSource.ANALYTIC,
        help="Where bosonic mixing comes from; fermions always integrate.",
    )

    coefficients = subparsers.add_parser(
        "bogoliubov", parents=[common], help="Bogoliubov coefficients as JSON."
    )
    _add_mode_arguments(coefficients)
    coefficients.add_argument("--method", choices=COEFFICIENT_METHODS, required=True)
    coefficients.add_argument(
        "--statistics",
        type=Statistics,
        choices=list(Statistics),
        default=Statistics.BOSON,
    )

    sweep = subparsers.add_parser(
        "sweep", parents=[common], help="Entropy over a grid read from JSON."
    )
    sweep.add_argument("--config", type=Path, required=True)
    sweep.add_argument("--out", type=Path, help="Overrides output_path.")

    figure = subparsers.add_parser(
        "figure", parents=[common], help="Data behind one of the figures."
    )
    figure.add_argument("which", type=FigureName, choices=list(FigureName))
    figure.add_argument("--out", type=Path)
    figure.add_argument(
        "--resolution", type=int, help="Points along every swept axis."
    )

    peaks = subparsers.add_parser(
        "peaks", parents=[common], help="m_max and peak entropy against momentum."
    )
    peaks.add_argument("--epsilon", type=float, required=True)
    peaks.add_argument("--rho", type=float, required=True)
    peaks.add_argument("--k-min", type=float, default=0.0)
    peaks.add_argument("--k-max", type=float, default=10.0)
    peaks.add_argument("--count", type=int, default=21)
    peaks.add_argument(
        "--statistics",
        type=Statistics,
        choices=list(Statistics),
        default=Statistics.BOSON,
    )
    peaks.add_argument("--out", type=Path)

    verify = subparsers.add_parser(
        "verify", parents=[common], help="Run the self-check suite."
    )
    verify.add_argument(
        "--level", type=VerifyLevel, choices=list(VerifyLevel), default=VerifyLevel.FAST
    )
    verify.add_argument("--json", type=Path, help="Write the report here.")

    parsed = parser.parse_args(args)
    if parsed.workers is not None and parsed.workers < 1:
        parser.error("--workers must be at least 1")
    if getattr(parsed, "resolution", None) is not None and parsed.resolution < 1:
        parser.error("--resolution must be at least 1")
    if getattr(parsed, "count", None) is not None and parsed.count < 1:
        parser.error("--count must be at least 1")
    return parsed


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8", newline="\n")
    logger.info(f"Wrote {out}")


def _run_settings(args) -> RunSettings:
    settings = {"progress": not args.no_progress, "out": getattr(args, "out", None)}
    if args.workers is not None:
        settings["workers"] = args.workers
    return RunSettings(**settings)


def entropy_command(args) -> int:
    """Print one sweep row for a single parameter point."""
    row = evaluate_point(
        GridPoint(args.epsilon, args.rho, args.m, args.k, args.spin, args.method)
    )
    sys.stdout.write(rows_to_csv([row]))
    return EXIT_OK if row.error is None else EXIT_USAGE


def coefficient_report(
    p: ExpansionParams, mode: ModeParams, method: str
) -> CoefficientReport:
    """Bogoliubov coefficients of a mode by the requested route.

    ``paper`` is the raw Gamma-function pair, ``canonical`` its normalized and
    relabelled form, ``ode`` the mode-integrator extraction. Only ``ode`` is
    available for fermions.
    """
    if mode.statistics == Statistics.FERMION:
        if method != "ode":
            raise FrwEntanglementError(
                "Fermionic coefficients are only available with --method ode"
            )
        final = modesolver.integrate_fermion_system(p, mode)
        coefficients = modesolver.extract_bogoliubov_fermion(final, p, mode)
    elif method == "paper":
        alpha, beta = bogoliubov.paper_alpha_beta(p, mode)
        x = abs(beta) ** 2 / abs(alpha) ** 2 if alpha else float("inf")
        return CoefficientReport(
            method=method,
            statistics=mode.statistics,
            alpha=alpha,
            beta=beta,
            alpha_sq=abs(alpha) ** 2,
            beta_sq=abs(beta) ** 2,
            x=x,
        )
    elif method == "canonical":
        coefficients = bogoliubov.canonical_boson_coefficients(p, mode)
    else:
        final = modesolver.integrate_boson_mode(p, mode)
        coefficients = modesolver.extract_bogoliubov_boson(
            final, frequencies(p, mode).omega_future
        )
    return CoefficientReport(
        method=method,
        statistics=mode.statistics,
        alpha=coefficients.alpha,
        beta=coefficients.beta,
        alpha_sq=coefficients.alpha_sq,
        beta_sq=coefficients.beta_sq,
        x=coefficients.x,
    )


def bogoliubov_command(args) -> int:
    """Print Bogoliubov coefficients as JSON."""
    p = ExpansionParams(epsilon=args.epsilon, rho=args.rho)
    mode = ModeParams(m=args.m, k=args.k, spin=REPRESENTATIVE_SPIN[args.statistics])
    report = coefficient_report(p, mode, args.method)
    sys.stdout.write(report.model_dump_json(indent=2) + "\n")
    return EXIT_OK


async def sweep_command(args) -> int:
    """Run a sweep described by a JSON config."""
    grid = SweepGrid.model_validate_json(args.config.read_text())
    if args.out is not None:
        grid = grid.model_copy(update={"output_path": args.out})
    rows = await run_sweep(grid, _run_settings(args))
    if grid.output_path is not None:
        write_csv(rows, grid.output_path)
    else:
        sys.stdout.write(rows_to_csv(rows))
    return EXIT_OK


async def figure_command(args) -> int:
    """Write the data behind one figure."""
    settings = _run_settings(args)
    rows = await figure_data(args.which, args.resolution, settings)
    _emit(rows_to_csv(rows), settings.out)
    return EXIT_OK


def peaks_command(args) -> int:
    """Trace m_max against momentum."""
    p = ExpansionParams(epsilon=args.epsilon, rho=args.rho)
    k_values = np.linspace(args.k_min, args.k_max, args.count).tolist()
    rows = peak_curve(k_values, p, args.statistics)
    _emit(rows_to_csv(rows, PEAK_COLUMNS), args.out)
    return EXIT_OK


def verify_command(args) -> int:
    """Run the verification suite; exit 2 when any check fails."""
    report = run_verify(args.level)
    _emit(report.to_json() + "\n", args.json)
    for check in report.get_failed_checks():
        logger.error(
            f"FAILED {check.check} {check.params}: {check.actual} vs {check.expected}"
        )
    return EXIT_OK if report.overall else EXIT_VERIFY_FAILED


async def frw_entanglement_entry(args=None) -> int:
    """Dispatch a subcommand and return its exit code."""
    load_dotenv()
    args = parse_main(args)
    level = logging.DEBUG if args.verbose else logging.INFO
    logger.setLevel(level)
    log_format = "%(asctime)s [%(levelname)8s] %(name)s:%(lineno)s %(message)s"
    coloredlogs.install(fmt=log_format, level=level, logger=logger, stream=sys.stderr)

    try:
        match args.command:
            case "entropy":
                return entropy_command(args)
            case "bogoliubov":
                return bogoliubov_command(args)
            case "sweep":
                return await sweep_command(args)
            case "figure":
                return await figure_command(args)
            case "peaks":
                return peaks_command(args)
            case "verify":
                return verify_command(args)
    except (FrwEntanglementError, ValidationError, ValueError, OSError) as error:
        logger.error(f"{type(error).__name__}: {error}")
        return EXIT_USAGE
    return EXIT_USAGE


def main():
    """Kick off async script."""
    sys.exit(asyncio.run(frw_entanglement_entry()))
