"""
Command-line front end.

    lambda-pt <spectrum|evolve|sweep|validate|fig2> [--config FILE]
              [--set key=value]... [--out PATH] [--format csv|json]

Exit codes: 0 ok, 1 validation failure, 2 config error, 3 metric requested at
an exceptional point, 4 numerical overflow. Data goes to stdout (or --out),
diagnostics to stderr.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence

from pydantic import ValidationError

from lambda_pt import __version__
from lambda_pt.core.config import settings
from lambda_pt.core.exceptions import (
    ConfigError,
    DegenerateCoupling,
    ExceptionalPointError,
    InvalidParams,
    LambdaPtError,
    StepOverflow,
)
from lambda_pt.schemas.run_config import RunConfig
from lambda_pt.services import figures, reporting, simulation, spectral, validation
from lambda_pt.services.config_loader import format_validation_error, load_run_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_CONFIG = 2
EXIT_EXCEPTIONAL_POINT = 3
EXIT_OVERFLOW = 4

VALIDATION_COLUMNS = ["name", "point", "status", "deviation", "tolerance", "detail"]


def _output_path(cfg: RunConfig) -> Optional[Path]:
    return Path(cfg.output) if cfg.output else None


def cmd_spectrum(cfg: RunConfig) -> int:
    q = simulation.require_pt(cfg)
    regime = spectral.classify_regime(q, cfg.ep_tol)
    if cfg.metric and regime.is_exceptional_point:
        row = simulation.spectrum_row(q, include_metric=False, ep_tol=cfg.ep_tol)
        reporting.emit([row], simulation.SPECTRUM_COLUMNS, cfg.format, _output_path(cfg))
        print(
            f"error: gamma_pt={q.gamma_pt}, v={q.v} is an exceptional point "
            f"(2v^2 - gamma_pt^2 = {regime.discriminant:.3e}); the Hamiltonian is not "
            "diagonalizable and has no metric. Rerun with --set metric=false.",
            file=sys.stderr,
        )
        return EXIT_EXCEPTIONAL_POINT

    columns = simulation.SPECTRUM_COLUMNS
    if cfg.metric:
        columns = columns + simulation.METRIC_COLUMNS
    row = simulation.spectrum_row(q, include_metric=cfg.metric, ep_tol=cfg.ep_tol)
    reporting.emit([row], columns, cfg.format, _output_path(cfg))
    return EXIT_OK


def cmd_evolve(cfg: RunConfig) -> int:
    rows = []
    for traj in simulation.run_evolution(cfg):
        rows.extend(reporting.trajectory_rows(traj))
    reporting.emit(rows, reporting.TRAJECTORY_COLUMNS, cfg.format, _output_path(cfg))
    return EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    if cfg.sweep is None:
        raise ConfigError("The sweep command needs a 'sweep' section.")
    rows = simulation.run_sweep(cfg.sweep, cfg.ep_tol)
    crossing = simulation.threshold_crossing(rows, cfg.sweep.parameter)
    if crossing is not None:
        logger.info(f"Regime changes at {cfg.sweep.parameter}={crossing}")
    reporting.emit(rows, simulation.sweep_columns(cfg.sweep), cfg.format, _output_path(cfg))
    return EXIT_OK


def _describe(r: validation.CheckResult) -> str:
    label = "SKIP" if r.status == "skipped" else r.status.upper()
    line = f"{label:<4} {r.name:<28} {r.point:<12}"
    if r.deviation is not None:
        line += f" deviation={r.deviation:.3e} tolerance={r.tolerance:.1e}"
    return f"{line} {r.detail}".rstrip()


def cmd_validate(cfg: RunConfig) -> int:
    extra = []
    if cfg.pt is not None or cfg.system is not None:
        extra.append(("user", simulation.require_pt(cfg)))
    results = validation.run_validation(extra)

    out = _output_path(cfg)
    if out is not None or cfg.format == "json":
        rows = [r.model_dump() for r in results]
        reporting.emit(rows, VALIDATION_COLUMNS, cfg.format, out)
    else:
        for r in results:
            print(_describe(r))

    failed = [r for r in results if r.failed]
    if failed:
        print(f"{len(failed)} of {len(results)} checks failed.", file=sys.stderr)
        return EXIT_VALIDATION_FAILED
    return EXIT_OK


def cmd_fig2(cfg: RunConfig) -> int:
    """``--out`` names the directory that receives fig2a and fig2b."""
    directory = Path(cfg.output) if cfg.output else Path(".")
    extension = "json" if cfg.format == "json" else "csv"
    for name, traj in figures.run_fig2().items():
        rows = reporting.population_rows(traj)
        out = directory / f"{name}.{extension}"
        reporting.emit(rows, reporting.POPULATION_COLUMNS, cfg.format, out)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "spectrum": cmd_spectrum,
    "evolve": cmd_evolve,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
    "fig2": cmd_fig2,
}

HELP = {
    "spectrum": "Eigenvalues, PT regime and metric of the effective Hamiltonian.",
    "evolve": "Time series of level amplitudes and populations.",
    "sweep": "E+ and regime across a range of v or gamma_pt.",
    "validate": "Run the invariant suite; exit 1 if any check fails.",
    "fig2": "Write the two reference population runs as plot-ready files.",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON run configuration.")
    common.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a config value; dotted keys reach nested sections (pt.v=0.03).",
    )
    common.add_argument("--out", help="Output file (a directory for fig2). Default: stdout.")
    common.add_argument("--format", choices=["csv", "json"], help="Output format.")

    parser = argparse.ArgumentParser(
        prog="lambda-pt",
        description="PT-symmetric three-level Lambda atom: spectrum, metric and dynamics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help=f"Default: {settings.LOG_LEVEL}.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=HELP[name], description=HELP[name])
    return parser


def _configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(
        level=(level or settings.LOG_LEVEL).upper(),
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help / --version.
        return int(e.code or 0)
    _configure_logging(args.log_level)
    logger.info(f"lambda-pt {args.command} starting")

    try:
        cfg = load_run_config(args.config, args.overrides, args.out, args.format)
        code = COMMANDS[args.command](cfg)
    except (ConfigError, InvalidParams, DegenerateCoupling) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return _fail(EXIT_CONFIG, str(e))
    except ValidationError as e:
        return _fail(EXIT_CONFIG, format_validation_error(e))
    except ExceptionalPointError as e:
        return _fail(EXIT_EXCEPTIONAL_POINT, str(e))
    except StepOverflow as e:
        logger.error(f"Integration overflow: {e}")
        return _fail(EXIT_OVERFLOW, str(e))
    except LambdaPtError as e:
        logger.error(f"{type(e).__name__}: {e}", exc_info=True)
        return _fail(EXIT_VALIDATION_FAILED, f"{type(e).__name__}: {e}")
    except OSError as e:
        return _fail(EXIT_CONFIG, f"cannot write output ({e})")

    logger.info(f"lambda-pt {args.command} finished with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
