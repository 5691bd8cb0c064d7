#!/usr/bin/env python3
"""CLI entry point for the canonical Green function bounds.

This script provides the command-line interface: it parses flags and an
optional key=value config file, runs one of the bound, count, fsup, shc or
selftest commands, and writes the report to stdout (diagnostics go to
stderr).
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from green_bounds.bounds.f_bound import compute_f_bounds
from green_bounds.config import COMMANDS, CONSTANTS_MODES, EXTENSIONS, FAMILIES, LOG_LEVELS, OUTPUT_FORMATS, RunConfig
from green_bounds.core.modular_group import GroupSpec, admissible_epsilons, genus, unit_epsilons
from green_bounds.core.shc_transform import RadialKernel, legendre_P, shc_transform, shc_weight2_indicator
from green_bounds.counting.grid_evaluator import GridConfig
from green_bounds.counting.point_counting import oracle_cross_check, sup_count_Y0
from green_bounds.errors import CertificationError, GenusZeroError, GreenBoundsError
from green_bounds.pipeline import DEFAULT_DELTA, DEFAULT_INTERIOR_A, PAPER_SUP_N_INTERIOR, PipelineOptions, example_pipeline
from green_bounds.report import bound_document, count_document, emit, fsup_document, shc_document
from green_bounds.selftest import run_selftest

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_GENUS_ZERO = 3
EXIT_CERTIFICATION = 4
EXIT_INTERRUPTED = 130


# ANSI color codes
class Colors:
    """ANSI color codes for terminal output."""
    RESET = "\033[0m"
    GREEN = "\033[32m"
    CYAN = "\033[36m"
    BLUE = "\033[34m"
    YELLOW = "\033[33m"
    RED = "\033[31m"
    BOLD_RED = "\033[1;31m"


class ColoredFormatter(logging.Formatter):
    """Formatter producing [datetime] [module] in green and a level-colored [severity]."""

    LEVEL_COLORS = {
        logging.DEBUG: Colors.CYAN,
        logging.INFO: Colors.BLUE,
        logging.WARNING: Colors.YELLOW,
        logging.ERROR: Colors.RED,
        logging.CRITICAL: Colors.BOLD_RED,
    }

    def format(self, record: logging.LogRecord) -> str:
        level_color = self.LEVEL_COLORS.get(record.levelno, Colors.RESET)
        datetime_str = self.formatTime(record, self.datefmt)
        green_part = f"{Colors.GREEN}[{datetime_str}] [{record.name}]{Colors.RESET}"
        severity_part = f"{level_color}[{record.levelname}]{Colors.RESET}"
        message = f"{green_part} {severity_part} {record.getMessage()}"
        if record.exc_info:
            message = f"{message}\n{self.formatException(record.exc_info)}"
        return message


def configure_logging(level: str = "INFO") -> None:
    """Install the colored formatter on the root logger, writing to stderr."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(ColoredFormatter(datefmt="%Y-%m-%d %H:%M:%S"))

    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, level.upper(), logging.INFO))
    root_logger.handlers.clear()
    root_logger.addHandler(handler)

    # turn off low-level logging
    for noisy in ["asyncio", "concurrent.futures"]:
        logging.getLogger(noisy).setLevel(logging.WARNING)
    logging.getLogger(__name__).debug("Logging configured with level: %s", level)


logger = logging.getLogger("green_bounds.cli")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser; every option defaults to None so the config file can supply it."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="key=value config file (flags override it)")
    common.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default=None,
                        help="Report format (default: text)")
    common.add_argument("--output", type=str, default=None, help="Also write the report to this file")
    common.add_argument("--log-level", dest="log_level", choices=LOG_LEVELS, default=None,
                        type=str.upper, help="Logging level (default: INFO)")
    common.add_argument("--workers", type=int, default=None, help="Worker processes for grid counts")
    common.add_argument("--grid", dest="grid_step", type=float, default=None,
                        help="Grid step h in (0, 0.05] for certified counts (default: 0.01)")

    group = argparse.ArgumentParser(add_help=False)
    group.add_argument("--family", choices=FAMILIES, default=None, help="Subgroup family (default: gamma0)")
    group.add_argument("--level", type=int, default=None, help="Level n (default: 11)")

    parser = argparse.ArgumentParser(
        description="Explicit bounds on canonical Green functions of modular curves",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Example usage:
  python green_bounds.py bound --family gamma0 --level 11 --constants paper --format json
  python green_bounds.py count --b 17 --grid 0.01 --workers 8 --oracle-samples 50
  python green_bounds.py fsup --a 1.44
  python green_bounds.py shc --a 1.44 --s 0 --k 2
  python green_bounds.py selftest

Exit codes: 0 success, 1 selftest failure or unexpected error, 2 invalid
flags or configuration, 3 genus zero, 4 certification failure.
        """,
    )
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(COMMANDS) + "}")

    bound = sub.add_parser("bound", parents=[common, group], help="Full bound report for a congruence subgroup")
    bound.add_argument("--constants", dest="constants_mode", choices=CONSTANTS_MODES, default=None,
                       help="Published point counts (paper) or certified grid counts (computed)")
    bound.add_argument("--extension", choices=EXTENSIONS, default=None,
                       help="Extension of sup_Y F to the cusps (default: coarse)")
    bound.add_argument("--use-genus", dest="use_genus", action="store_true", default=None,
                       help="Divide by the true genus instead of 1")
    bound.add_argument("--A", dest="A", type=float, default=None, help="Lower Green function constant A")
    bound.add_argument("--B", dest="B", type=float, default=None, help="Upper Green function constant B")
    bound.add_argument("--a", dest="a", type=float, default=None, help="Interior parameter a (default: 1.44)")
    bound.add_argument("--delta", type=float, default=None, help="Disc parameter delta (default: 2)")

    count = sub.add_parser("count", parents=[common], help="Certified sup of N_SL2(Z)(z, b) over the strip")
    count.add_argument("--b", dest="b", type=float, default=None, help="Threshold b (default: 17)")
    count.add_argument("--delta", type=float, default=None, help="Disc parameter delta fixing the strip top (default: 2)")
    count.add_argument("--oracle-samples", dest="oracle_samples", type=int, default=None,
                       help="Cross-check this many cell centres against the brute-force oracle")

    fsup = sub.add_parser("fsup", parents=[common, group], help="Sup-norm bounds on F_Gamma")
    fsup.add_argument("--a", dest="a", type=float, default=None, help="Interior parameter a (default: 1.44)")
    fsup.add_argument("--constants", dest="constants_mode", choices=CONSTANTS_MODES, default=None)
    fsup.add_argument("--extension", choices=EXTENSIONS, default=None)
    fsup.add_argument("--use-genus", dest="use_genus", action="store_true", default=None)
    fsup.add_argument("--delta", type=float, default=None)

    shc = sub.add_parser("shc", parents=[common], help="Transform of the indicator kernel of [1, a]")
    shc.add_argument("--a", dest="a", type=float, default=None, help="Cutoff a (default: 1.44)")
    shc.add_argument("--s", dest="s", type=float, default=None, help="Spectral parameter s (default: 0)")
    shc.add_argument("--k", dest="k", type=float, default=None, help="Weight k (default: 2)")
    shc.add_argument("--quad-tol", dest="quad_tol", type=float, default=None)
    shc.add_argument("--series-tol", dest="series_tol", type=float, default=None)

    sub.add_parser("selftest", parents=[common], help="Run the golden checks")
    return parser


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.error("a command is required")
    return args


def build_config(args: argparse.Namespace) -> RunConfig:
    overrides: Dict[str, Any] = {k: v for k, v in vars(args).items() if k != "config"}
    if args.config is not None:
        return RunConfig.from_file(args.config, **overrides)
    return RunConfig().merged(overrides)


def _pipeline_options(config: RunConfig) -> PipelineOptions:
    return PipelineOptions(
        constants_mode=config.constants_mode,
        grid_step=config.grid_step,
        workers=config.workers,
        extension=config.extension,
        use_genus=config.use_genus,
        A=config.A,
        B=config.B,
        a=config.a,
        delta=config.delta,
    )


def run_bound(config: RunConfig) -> Dict[str, Any]:
    report = example_pipeline(config.level, config.family, _pipeline_options(config))
    return bound_document(report)


def run_count(config: RunConfig) -> Dict[str, Any]:
    certificate = sup_count_Y0(config.b, config.grid_step, GridConfig(workers=config.workers), delta=config.delta)
    checked = 0
    if config.oracle_samples:
        checked = oracle_cross_check(config.b, config.grid_step, config.oracle_samples, delta=config.delta)
    return count_document(certificate, checked)


def run_fsup(config: RunConfig) -> Dict[str, Any]:
    spec = GroupSpec(config.family, config.level)
    g_used = 1
    if config.use_genus:
        g_used = genus(spec)
        if g_used < 1:
            raise GenusZeroError(f"genus zero: {spec.label}")
    if config.constants_mode == "paper" and config.a == DEFAULT_INTERIOR_A and config.delta == DEFAULT_DELTA:
        N, provenance = PAPER_SUP_N_INTERIOR, "paper"
    else:
        threshold = 2.0 * config.a * config.a - 1.0
        N = sup_count_Y0(
            threshold, config.grid_step, GridConfig(workers=config.workers), delta=config.delta
        ).certified_sup
        provenance = "computed"
    eps_unit, _ = unit_epsilons(config.delta)
    result = compute_f_bounds(
        config.a,
        N,
        config.level,
        eps_unit,
        genus=g_used,
        cusp_eps=admissible_epsilons(spec, config.delta),
        extension=config.extension,
    )
    return fsup_document(result, provenance)


def run_shc(config: RunConfig) -> Dict[str, Any]:
    kernel = RadialKernel.indicator(config.a)
    values = {
        "transform": shc_transform(kernel, config.s, config.k, config.quad_tol, config.series_tol),
        "legendre_at_a": legendre_P(config.s, config.k, config.a, config.series_tol),
    }
    if config.s == 0.0 and config.k == 2.0:
        values["closed_form"] = shc_weight2_indicator(config.a)
    return shc_document(config.a, config.s, config.k, values)


COMMAND_HANDLERS = {
    "bound": run_bound,
    "count": run_count,
    "fsup": run_fsup,
    "shc": run_shc,
}


def run(config: RunConfig) -> int:
    """Execute one configured command and print its report; returns the exit code."""
    if config.command == "selftest":
        results = run_selftest()
        for result in results:
            print(result.line())
        passed = all(r.passed for r in results)
        print(f"{sum(r.passed for r in results)}/{len(results)} golden checks passed")
        return EXIT_OK if passed else EXIT_FAILURE

    document = COMMAND_HANDLERS[config.command](config)
    sys.stdout.write(emit(document, config.output_format, config.output))
    return EXIT_OK


def _print_error_box(title: str, message: str) -> None:
    print("\n" + "=" * 70, file=sys.stderr)
    print(f"ERROR: {title}", file=sys.stderr)
    print("=" * 70, file=sys.stderr)
    print(f"\n{message}\n", file=sys.stderr)
    print("Check the logs above for more details.", file=sys.stderr)
    print("=" * 70, file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    try:
        args = parse_arguments(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK

    try:
        config = build_config(args)
    except ValueError as e:
        configure_logging()
        logger.error("Invalid configuration: %s", str(e))
        return EXIT_USAGE

    configure_logging(config.log_level)
    logger.info("Running %s", config.command)
    logger.info("=" * 60)

    try:
        return run(config)

    except KeyboardInterrupt:
        logger.warning("Interrupted by user")
        return EXIT_INTERRUPTED

    except GenusZeroError as e:
        logger.error("%s", str(e))
        return EXIT_GENUS_ZERO

    except CertificationError as e:
        logger.error("Certification failed: %s", str(e))
        return EXIT_CERTIFICATION

    except GreenBoundsError as e:
        if isinstance(e, ValueError):
            logger.error("Invalid input: %s", str(e))
            return EXIT_USAGE
        logger.exception("Computation failed: %s", str(e))
        _print_error_box("Computation failed", str(e))
        return EXIT_FAILURE

    except Exception as e:
        logger.exception("Run failed with error: %s", str(e))
        _print_error_box("Run failed", str(e))
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
