"""Methods to display verification, classification and search results."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from rich.table import Table

import qswitch.constants as const

if TYPE_CHECKING:
    from rich.console import Console

    from qswitch.optimizer import ProtocolScore
    from qswitch.verify import CheckResult


def checks(console: Console, results: list[CheckResult]) -> None:
    """Display the status of each verification check."""
    if not results:
        return

    table = Table(show_header=True, title="Verification")
    table.add_column("Check", style="bold")
    table.add_column("Status")
    table.add_column("Max error", justify="right")
    table.add_column("Detail")

    for result in results:
        color = const.STATUS_COLOR_MAP[result.status]
        table.add_row(
            result.name,
            f"[bold {color}]{result.status}[/bold {color}]",
            f"{result.max_error:.3g}",
            result.detail,
        )

    console.print(table)


def classification(console: Console, rows: list[dict[str, Any]]) -> None:
    """Display the classification of each ordered pair, disagreements in red."""
    if not rows:
        return

    table = Table(show_header=True, title="Interference terms")
    for column in ("pi", "pi_prime", "kind", "c", "exponent", "diagram"):
        table.add_column(column)

    for row in rows:
        agree = row["kind"] == row["diagram_kind"] and row["cycle_count"] == row["diagram_loops"]
        color = const.STATUS_COLOR_MAP[const.STATUS_OK if agree else const.STATUS_FAILED]
        table.add_row(
            row["pi"],
            row["pi_prime"],
            row["kind"],
            str(row["cycle_count"]),
            str(row["coeff_exponent"]),
            f"[{color}]{row['diagram_kind']}, {row['diagram_loops']} loops[/{color}]",
        )

    console.print(table)


def maximisers(console: Console, scores: list[ProtocolScore]) -> None:
    """Display the maximisers of a search."""
    if not scores:
        return

    table = Table(show_header=True, title="Maximisers")
    table.add_column("Orderings", style="bold")
    table.add_column("n_id", justify="right")
    table.add_column("n_dp", justify="right")
    table.add_column("O(S)", justify="right")

    for score in scores:
        table.add_row(
            " ".join(str(perm) for perm in score.perm_set),
            str(score.n_id),
            str(score.n_dp),
            str(score.objective),
        )

    console.print(table)
