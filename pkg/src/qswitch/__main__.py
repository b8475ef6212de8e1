"""qswitch command line interface."""

from __future__ import annotations

import logging
import traceback
from pathlib import Path
from typing import Any

import rich_click as click

import qswitch.constants as const
from qswitch import log, task, version
from qswitch.configuration import RunConfig
from qswitch.errors import QSwitchCheckError

CONTEXT_SETTINGS = {"help_option_names": ["-h", "--help"]}
EPILOG = f"Check our docs at {version.__documentation__} for more details."

_output_option = click.option(
    "--output",
    "-o",
    type=click.Path(file_okay=True, dir_okay=False, writable=True),
    default=None,
    help="Write the report to this file instead of stdout.",
)
_n_option = click.option(
    "-N", "--n-channels", "n", type=click.IntRange(min=1), help="Number of channels."
)
_d_option = click.option(
    "-d", "--dim", "d", type=click.IntRange(min=1), help="System dimension."
)
_perms_option = click.option(
    "--perms",
    default=const.PERMS_CYCLIC,
    show_default=True,
    help="Orderings: 'cyclic', 'all-pairs' or a JSON list such as '[[1,2],[2,1]]'.",
)
_control_option = click.option(
    "--control",
    default=const.FOURIER,
    show_default=True,
    help="Control state: 'fourier' or a JSON/YAML file holding an M×M matrix.",
)
_workers_option = click.option(
    "--workers",
    type=click.IntRange(min=1, max=const.MAX_PROCESSES),
    default=1,
    show_default=True,
    help="Number of worker processes.",
)


@click.group(context_settings=CONTEXT_SETTINGS, epilog=EPILOG)
@click.pass_context
@click.option("--debug/--no-debug", default=False)
def qswitch(ctx: click.Context, debug: bool = False) -> None:
    """🔀 qswitch: Quantum switches of completely depolarising channels."""
    ctx.ensure_object(dict)
    ctx.obj["debug"] = debug
    if ctx.invoked_subcommand not in ["version"]:
        click.secho(f"qswitch v{version.__version__}", fg="magenta", err=True)

    log.init_logging(level=logging.DEBUG if debug else logging.INFO)


def _run(ctx: click.Context, command: str, **options: Any) -> None:  # noqa: ANN401
    try:
        cfg = RunConfig(command=command, **options)
        getattr(task, command)(cfg)
        click.secho("✨ Success", fg="green", err=True)
    except Exception as e:
        _error(ctx, e)


@qswitch.command(epilog=EPILOG)
@click.pass_context
@click.option(
    "--spec",
    type=click.Path(file_okay=True, dir_okay=False, readable=True, exists=True),
    default=None,
    help="Switch specification document (JSON or YAML).",
)
@click.option(
    "--cdpc",
    is_flag=True,
    default=False,
    help="Use N completely depolarising channels of dimension d.",
)
@_d_option
@_n_option
@_perms_option
@click.option(
    "--rho",
    default="zero",
    show_default=True,
    help="Input state: zero, one, plus, mixed or a JSON/YAML file holding a matrix.",
)
@_control_option
@click.option("--fast", is_flag=True, default=False, help="Use the closed-form evaluator.")
@click.option(
    "--both", is_flag=True, default=False, help="Run both evaluators and compare them."
)
@click.option(
    "--tolerance",
    type=float,
    default=const.TOLERANCE,
    show_default=True,
    help="Largest accepted deviation between the evaluators.",
)
@_output_option
def evaluate(
    ctx: click.Context,
    spec: str | None,
    cdpc: bool,
    fast: bool,
    both: bool,
    output: str | None,
    **options: Any,  # noqa: ANN401
) -> None:
    """Evaluate a switch on an input state and write its output blocks."""
    if bool(spec) == cdpc:
        raise click.UsageError("Pass exactly one of --spec and --cdpc")
    if fast and both:
        raise click.UsageError("--fast and --both are mutually exclusive")

    _run(
        ctx,
        "evaluate",
        spec=Path(spec) if spec else None,
        mode="both" if both else "fast" if fast else "bruteforce",
        output=Path(output) if output else None,
        **options,
    )


@qswitch.command(epilog=EPILOG)
@click.pass_context
@_n_option
@click.option(
    "--perms",
    default=const.PERMS_ALL,
    show_default=True,
    help="Orderings: 'cyclic', 'all-pairs' or a JSON list such as '[[1,2],[2,1]]'.",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["csv", "json"]),
    default="csv",
    show_default=True,
    help="Report format.",
)
@_output_option
def classify(ctx: click.Context, output: str | None, **options: Any) -> None:  # noqa: ANN401
    """Classify the interference term of every ordered pair of orderings."""
    _run(ctx, "classify", output=Path(output) if output else None, **options)


@qswitch.command(epilog=EPILOG)
@click.pass_context
@_n_option
@click.option(
    "-M", "--n-orders", "m", type=click.IntRange(min=1), help="Orderings per subset."
)
@_d_option
@click.option(
    "--check-cyclic",
    is_flag=True,
    default=False,
    help="Fail unless every maximiser is pairwise cyclic.",
)
@click.option(
    "--sample",
    is_flag=True,
    default=False,
    help="Draw random subsets instead of enumerating them all.",
)
@click.option(
    "--samples",
    type=click.IntRange(min=1),
    default=const.DEFAULT_SAMPLES,
    show_default=True,
    help="Number of subsets drawn by the sampled search.",
)
@click.option(
    "--seed", type=click.IntRange(min=0), default=None, help="Seed of the sampled search."
)
@_workers_option
@_output_option
def search(ctx: click.Context, output: str | None, **options: Any) -> None:  # noqa: ANN401
    """Search the subsets of orderings that maximise O(S)."""
    _run(ctx, "search", output=Path(output) if output else None, **options)


@qswitch.command(epilog=EPILOG)
@click.pass_context
@click.option(
    "--quick", is_flag=True, default=False, help="Restrict every check to N <= 3."
)
@click.option(
    "--tolerance",
    type=float,
    default=const.TOLERANCE,
    show_default=True,
    help="Largest accepted numerical error.",
)
@click.option(
    "--seed",
    type=click.IntRange(min=0),
    default=const.DEFAULT_SEED,
    show_default=True,
    help="Seed of the random states and channels.",
)
@_workers_option
@_output_option
def verify(ctx: click.Context, output: str | None, **options: Any) -> None:  # noqa: ANN401
    """Cross-check the evaluators against each other."""
    _run(ctx, "verify", output=Path(output) if output else None, **options)


@qswitch.command(epilog=EPILOG)
@click.pass_context
@_n_option
@_d_option
@_perms_option
@click.option(
    "--ensemble",
    default=const.ENSEMBLE_BASIS,
    show_default=True,
    help="Input ensemble: 'basis' or a JSON/YAML ensemble document.",
)
@_control_option
@_output_option
def holevo(ctx: click.Context, output: str | None, **options: Any) -> None:  # noqa: ANN401
    """Compute the Holevo quantity of an ensemble sent through a switch."""
    _run(ctx, "holevo", output=Path(output) if output else None, **options)


@qswitch.command(name="version", epilog=EPILOG)
def version_info() -> None:
    """Display the version information."""
    click.echo(f"qswitch {version.__version__}")


def _error(ctx: click.Context, e: Exception) -> None:
    """Handle errors."""
    click.secho("Error", fg="red", err=True)
    click.echo(e, err=True)
    if isinstance(e, QSwitchCheckError):
        for failure in e.failures:
            click.echo(f"  - {failure}", err=True)

    if ctx.find_root().obj.get("debug"):
        traceback.print_exc()

    ctx.exit(const.EXIT_FAILED if isinstance(e, QSwitchCheckError) else const.EXIT_USAGE)


if __name__ == "__main__":
    qswitch()
