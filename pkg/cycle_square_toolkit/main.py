"""
Command-line interface for cycle-square-toolkit.

Usage:
    cycle-square hit --n 10 --l 5          # h_N(0, l), exact and decimal
    cycle-square table --n 6               # CSV of h_N(0, l) for l = 0..N/2
    cycle-square verify --n-max 60         # run every verification sweep
    cycle-square kirchhoff --n 10          # Kirchhoff index
    cycle-square resistance --n 6 --l 3    # effective resistance r(0, l)
    cycle-square trees --n 6 --l 3         # spanning trees, optionally with 0 and l merged
    cycle-square simulate --n 10 --l 5 --trials 200000 --seed 42
    cycle-square asym --n 1000 --x 0.3     # asymptotic comparisons
"""

import io
import logging
from contextlib import contextmanager
from fractions import Fraction
from typing import Any, Dict, Iterator, Optional

import click

from hitting_times.closed_form import (
    excess_limit,
    hitting_time,
    hitting_vector,
    nearest_vertex,
    normalized_excess,
    scaled_hitting,
    scaled_limit,
)
from hitting_times.cycle_graph import MIN_N
from hitting_times.exceptions import CycleSquareError
from hitting_times.mc_simulator import DEFAULT_MAX_STEPS, empirical_vs_exact, make_walk_config
from hitting_times.rendering import DEFAULT_DIGITS, OutputRecord, to_decimal, write_table_csv
from hitting_times.resistance_kirchhoff import effective_resistance, kirchhoff_index, merged_tree_count, tree_count
from hitting_times.verification import SUITES, run_suite
from logging_config import setup_logging

__version__ = "0.1.0"

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_IO_ERROR = 3
LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class FractionParamType(click.ParamType):
    """Parses "0.3", "3/10" or "1" into an exact Fraction."""

    name = "fraction"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(str(value))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not an exact fraction", param, ctx)


def _validate_n(ctx, param, value):
    if value is not None and value < MIN_N:
        raise click.BadParameter(f"N must be >= {MIN_N}")
    return value


n_option = click.option("--n", "n", type=int, required=True, callback=_validate_n, help="Cycle length N (>= 5).")
json_option = click.option("--json", "as_json", is_flag=True, help="Emit a single JSON object.")
digits_option = click.option(
    "--digits", type=click.IntRange(min=0), default=DEFAULT_DIGITS, show_default=True, help="Fractional digits."
)


@contextmanager
def _user_input_errors() -> Iterator[None]:
    """Turns library errors caused by bad arguments into click usage errors (exit 2)."""
    try:
        yield
    except CycleSquareError as e:
        raise click.UsageError(str(e)) from e


def _emit(record: OutputRecord, as_json: bool) -> None:
    click.echo(record.to_json() if as_json else record.to_text())


def _emit_value(
    command: str, params: Dict[str, Any], value: Fraction, digits: int, as_json: bool, **extra: Any
) -> None:
    _emit(OutputRecord.from_value(command, params, value, digits, **extra), as_json)


@click.group()
@click.version_option(version=__version__, prog_name="cycle-square")
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default="WARNING",
    show_default=True,
    help="Diagnostics level (written to stderr).",
)
def cli(log_level: str):
    """
    Exact hitting times, resistances and spanning-tree counts on the square of a cycle.
    """
    setup_logging(log_level)


@cli.command()
@n_option
@click.option("--l", "l", type=int, required=True, help="Target vertex (taken mod N).")
@json_option
@digits_option
def hit(n: int, l: int, as_json: bool, digits: int):
    """Average hitting time h_N(0, l)."""
    with _user_input_errors():
        value = hitting_time(n, l)
    _emit_value("hit", {"N": n, "l": l}, value, digits, as_json)


@cli.command()
@n_option
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None, help="Write to PATH, not stdout.")
@digits_option
@click.pass_context
def table(ctx: click.Context, n: int, csv_path: Optional[str], digits: int):
    """CSV table of h_N(0, l) for l = 0..floor(N/2)."""
    with _user_input_errors():
        rows = hitting_vector(n)
    if csv_path is None:
        buffer = io.StringIO()
        write_table_csv(rows, buffer, digits)
        click.echo(buffer.getvalue(), nl=False)
        return
    try:
        with open(csv_path, "w", newline="", encoding="utf-8") as handle:
            count = write_table_csv(rows, handle, digits)
    except OSError as e:
        logger.error(f"Could not write table to {csv_path}: {e}")
        click.echo(f"Error: cannot write {csv_path}: {e}", err=True)
        ctx.exit(EXIT_IO_ERROR)
    logger.info(f"Wrote {count} rows to {csv_path}")


@cli.command()
@click.option("--n-max", "n_max", type=int, required=True, callback=_validate_n, help="Largest N to sweep.")
@click.option("--suite", type=click.Choice(("all",) + SUITES), default="all", show_default=True)
@click.pass_context
def verify(ctx: click.Context, n_max: int, suite: str):
    """Cross-check every closed form against its oracle for 5 <= N <= n-max."""
    failures = run_suite(suite, n_max)
    if failures:
        for failure in failures:
            click.echo(failure.describe(), err=True)
        click.echo(f"{len(failures)} check(s) failed in suite '{suite}' up to N={n_max}", err=True)
        ctx.exit(EXIT_FAILURE)
    click.echo(f"Suite '{suite}' passed for 5 <= N <= {n_max}")


@cli.command()
@n_option
@json_option
@digits_option
def kirchhoff(n: int, as_json: bool, digits: int):
    """Kirchhoff index Kf(C_N^2)."""
    with _user_input_errors():
        value = kirchhoff_index(n)
    _emit_value("kirchhoff", {"N": n}, value, digits, as_json)


@cli.command()
@n_option
@click.option("--l", "l", type=int, required=True, help="Vertex l in 1..N-1.")
@json_option
@digits_option
def resistance(n: int, l: int, as_json: bool, digits: int):
    """Effective resistance r(0, l) with unit resistors."""
    with _user_input_errors():
        value = effective_resistance(n, l)
    _emit_value("resistance", {"N": n, "l": l}, value, digits, as_json)


@cli.command()
@n_option
@click.option("--l", "l", type=int, default=None, help="Merge vertices 0 and l before counting.")
@json_option
@digits_option
def trees(n: int, l: Optional[int], as_json: bool, digits: int):
    """Number of spanning trees, optionally of the 0/l-merged multigraph."""
    with _user_input_errors():
        if l is None:
            value, params = tree_count(n), {"N": n}
        else:
            value, params = merged_tree_count(n, l), {"N": n, "l": l}
    _emit_value("trees", params, Fraction(value), digits, as_json)


@cli.command()
@n_option
@click.option("--l", "l", type=int, required=True, help="Target vertex in 1..N-1.")
@click.option("--trials", type=int, required=True)
@click.option("--seed", type=int, required=True, help="Master seed in [0, 2^64).")
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--max-steps", "max_steps", type=int, default=DEFAULT_MAX_STEPS, show_default=True)
@json_option
@digits_option
@click.pass_context
def simulate(
    ctx: click.Context, n: int, l: int, trials: int, seed: int, workers: int, max_steps: int, as_json: bool, digits: int
):
    """Monte Carlo estimate of h_N(0, l) compared against the exact value."""
    with _user_input_errors():
        cfg = make_walk_config(n=n, target=l, trials=trials, master_seed=seed, max_steps=max_steps, workers=workers)
    report = empirical_vs_exact(cfg)
    stats = report.stats
    _emit_value(
        "simulate",
        {"N": n, "l": l, "trials": trials, "seed": seed, "max_steps": max_steps},
        report.exact,
        digits,
        as_json,
        mean=stats.mean,
        variance=stats.variance,
        stderr=stats.stderr,
        z_score=report.z_score,
        trials_completed=stats.trials_completed,
        truncated_trials=stats.truncated_trials,
        flagged=report.flagged,
    )
    if report.flagged:
        ctx.exit(EXIT_FAILURE)


@cli.command()
@n_option
@click.option("--l", "l", type=int, default=None, help="Fixed target: compare with 4/(5 sqrt5).")
@click.option("--x", "x", type=FractionParamType(), default=None, help="Ratio l/N: compare with (2/5)x(1-x).")
@json_option
@digits_option
def asym(n: int, l: Optional[int], x: Optional[Fraction], as_json: bool, digits: int):
    """Asymptotic comparison for one N, by target vertex or by ratio."""
    if (l is None) == (x is None):
        raise click.UsageError("Pass exactly one of --l or --x")
    try:
        if l is not None:
            value = normalized_excess(n, l)
            limit = to_decimal(Fraction(excess_limit(digits + 10)), digits)
            _emit_value("asym", {"N": n, "l": l}, value, digits, as_json, quantity="normalized_excess", limit=limit)
            return
        target = nearest_vertex(n, x)
        value = scaled_hitting(n, target)
        limit = to_decimal(scaled_limit(x), digits)
        _emit_value(
            "asym", {"N": n, "x": str(x)}, value, digits, as_json, quantity="scaled_hitting", l=target, limit=limit
        )
    except (CycleSquareError, ValueError) as e:
        raise click.UsageError(str(e)) from e


if __name__ == "__main__":
    cli()
