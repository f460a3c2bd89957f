"""Command-line interface for lsqbench."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import NoReturn, Sequence

from lsqbench import __version__
from lsqbench.errors import UsageError
from lsqbench.services.plots import PRESETS

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
METHODS = ("pinv", "normal", "gd", "hybrid")
TABLE_FORMATS = ("markdown", "csv")

_handler: logging.Handler | None = None


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as exit code 1 instead of 2."""

    def error(self, message: str) -> NoReturn:
        self.print_help(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _add_gd_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, help="Gradient descent learning rate")
    parser.add_argument("--tol", type=float, help="Stop when the coefficient step norm is below this")
    parser.add_argument("--max-iter", type=int, help="Gradient descent iteration cap")
    parser.add_argument(
        "--unnormalized",
        action="store_true",
        help="Use the plain-sum gradient (step alpha*2) instead of dividing by n",
    )


def _add_source_flags(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--in", dest="input", help="Records CSV written by sweep")
    source.add_argument(
        "--reference",
        action="store_true",
        help="Use the bundled published results table",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="lsqbench",
        description="Least-squares solvers and a pseudoinverse vs gradient descent benchmark",
    )
    parser.add_argument("--version", action="version", version=f"lsqbench {__version__}")
    parser.add_argument("--config", help="Settings file (YAML); default ~/.config/lsqbench/settings.yaml")
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    parser.add_argument("--json", action="store_true", help="Emit machine-readable JSON output")

    subparsers = parser.add_subparsers(dest="command", help="Commands")

    generate_parser = subparsers.add_parser(
        "generate",
        help="Generate a synthetic problem and write it as CSV",
    )
    generate_parser.add_argument("--n", type=int, required=True, help="Number of samples")
    generate_parser.add_argument("--d", type=int, required=True, help="Number of features")
    generate_parser.add_argument("--cond", type=float, default=1.0, help="Condition factor in (0, 1]")
    generate_parser.add_argument("--noise", type=float, help="Noise standard deviation")
    generate_parser.add_argument("--seed", type=int, help="Random seed")
    generate_parser.add_argument("--out", help="Output CSV path (stdout when absent)")

    solve_parser = subparsers.add_parser(
        "solve",
        help="Fit one problem (CSV or synthetic) with one method",
    )
    solve_parser.add_argument("--csv", help="CSV dataset with a header row")
    solve_parser.add_argument("--target", default="y", help="Target column of --csv")
    solve_parser.add_argument(
        "--standardize",
        action="store_true",
        help="Center and scale --csv feature columns",
    )
    solve_parser.add_argument("--n", type=int, default=1000, help="Synthetic samples")
    solve_parser.add_argument("--d", type=int, default=10, help="Synthetic features")
    solve_parser.add_argument("--cond", type=float, default=1.0, help="Synthetic condition factor")
    solve_parser.add_argument("--noise", type=float, help="Synthetic noise standard deviation")
    solve_parser.add_argument("--seed", type=int, help="Synthetic random seed")
    solve_parser.add_argument("--method", choices=METHODS, default="pinv", help="Solver")
    _add_gd_flags(solve_parser)
    solve_parser.add_argument(
        "--warm-rows",
        type=int,
        help="Rows used for the hybrid pseudoinverse warm start",
    )
    solve_parser.add_argument("--trace", help="Write the GD loss trajectory as SVG")

    sweep_parser = subparsers.add_parser(
        "sweep",
        help="Benchmark both solvers over an (n, d, cond) grid",
    )
    sweep_parser.add_argument("--n", type=int, nargs="+", help="Sample counts")
    sweep_parser.add_argument("--d", type=int, nargs="+", help="Feature counts")
    sweep_parser.add_argument("--cond", type=float, nargs="+", help="Condition factors")
    sweep_parser.add_argument("--noise", type=float, help="Noise standard deviation")
    sweep_parser.add_argument("--seed", type=int, help="Base seed")
    sweep_parser.add_argument("--repeats", type=int, help="Timed runs per solver (minimum kept)")
    _add_gd_flags(sweep_parser)
    sweep_parser.add_argument("--out", help="Records CSV path (default results.csv)")

    report_parser = subparsers.add_parser(
        "report",
        help="Summary tables from a records file",
    )
    _add_source_flags(report_parser)
    mode = report_parser.add_mutually_exclusive_group()
    mode.add_argument("--describe", action="store_true", help="Descriptive statistics per column")
    mode.add_argument("--group", help="Comma-separated group keys from n,d,cond")
    report_parser.add_argument("--columns", help="Comma-separated columns to include")
    report_parser.add_argument("--format", choices=TABLE_FORMATS, default="markdown")
    report_parser.add_argument("--out", help="Write the table to this path")

    plot_parser = subparsers.add_parser(
        "plot",
        help="SVG charts from a records file",
    )
    _add_source_flags(plot_parser)
    figure = plot_parser.add_mutually_exclusive_group()
    figure.add_argument("--figure", choices=sorted(PRESETS), help="Named figure preset")
    figure.add_argument("--all", action="store_true", help="Every preset into directory --out")
    plot_parser.add_argument("--x", help="Column for the x axis")
    plot_parser.add_argument("--y", help="Comma-separated columns for the y axis")
    plot_parser.add_argument("--filter", help="Row filter, e.g. n=1000,cond=1.0")
    plot_parser.add_argument("--log-x", action="store_true", help="Logarithmic x axis")
    plot_parser.add_argument("--log-y", action="store_true", help="Logarithmic y axis")
    plot_parser.add_argument("--out", help="SVG path (or directory with --all)")

    return parser


def _configure_logging(level: str) -> None:
    global _handler
    root = logging.getLogger()
    if _handler is not None:
        root.removeHandler(_handler)
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(_handler)
    root.setLevel(level)


def _dispatch(args: argparse.Namespace, settings) -> int:
    if args.command == "generate":
        from lsqbench.commands.generate import run_generate

        return run_generate(args, settings=settings)
    if args.command == "solve":
        from lsqbench.commands.solve import run_solve

        return run_solve(args, settings=settings)
    if args.command == "sweep":
        from lsqbench.commands.sweep import run_sweep_command

        return run_sweep_command(args, settings=settings)
    if args.command == "report":
        from lsqbench.commands.report import run_report

        return run_report(args, settings=settings)
    if args.command == "plot":
        from lsqbench.commands.plot import run_plot

        return run_plot(args, settings=settings)
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Sequence[str] | None = None) -> int:
    """Main CLI entry point."""
    _load_dotenv_files()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return exc.exit_code
    if args.command is None:
        parser.print_help(sys.stderr)
        return 1

    try:
        from lsqbench.settings import load_settings, resolve_config_path

        settings = load_settings(resolve_config_path(args.config))
        _configure_logging("DEBUG" if args.verbose else settings.log_level)
        return _dispatch(args, settings)
    except Exception as exc:  # pragma: no cover - exercised in CLI tests
        from lsqbench.errors import exit_code_for_exception

        code = exit_code_for_exception(exc)
        if code == 1:
            parser.print_help(sys.stderr)
        print(f"lsqbench: {exc}", file=sys.stderr)
        return code


def _load_dotenv_files() -> None:
    """Load environment variables from a .env file when python-dotenv is installed."""
    try:
        from dotenv import load_dotenv

        load_dotenv()
    except ImportError:
        pass


if __name__ == "__main__":
    sys.exit(main())
