"""Unit tests for qswitch.verify."""

from __future__ import annotations

import pytest

from qswitch import constants as const
from qswitch.verify import (
    CheckResult,
    check_capacity_activation,
    check_classification_fit,
    check_cyclic_closed_form,
    check_cyclic_optimality,
    check_dilation,
    check_loop_counts,
    check_oracle_equivalence,
    check_two_channel_closed_form,
    run_suite,
)


def test_check_result_status() -> None:
    assert CheckResult("a", True, 0.0, "").status == const.STATUS_OK
    assert CheckResult("a", False, 1.0, "").status == const.STATUS_FAILED


def test_two_channel_closed_form() -> None:
    result = check_two_channel_closed_form()
    assert result.passed
    assert result.max_error < 1e-12


def test_oracle_equivalence() -> None:
    result = check_oracle_equivalence((2, 3), (2,), n_states=2)
    assert result.passed
    assert result.detail.startswith("40 pairs")


def test_oracle_equivalence_is_seeded() -> None:
    first = check_oracle_equivalence((2,), (2, 3), n_states=2, seed=11)
    second = check_oracle_equivalence((2,), (2, 3), n_states=2, seed=11)
    assert first.max_error == second.max_error


def test_classification_fit_reports_both_conditions() -> None:
    result = check_classification_fit((2, 3))
    assert result.passed
    assert "same cycle (0, pi(N)) matched 40/40" in result.detail
    assert "same cycle (0, pi'(N)) matched 40/40" in result.detail


def test_loop_counts() -> None:
    result = check_loop_counts(3)
    assert result.passed
    assert result.detail == "41/41 pairs agree, N <= 3"


def test_cyclic_closed_form() -> None:
    assert check_cyclic_closed_form((2, 3, 4), (2, 3), (2, 3)).passed


def test_cyclic_optimality() -> None:
    result = check_cyclic_optimality(((2, 2), (3, 2), (3, 3)), (2, 3))
    assert result.passed
    assert result.detail == "72 subsets scanned"


def test_dilation() -> None:
    assert check_dilation(n_pairs=5).passed


def test_capacity_activation() -> None:
    result = check_capacity_activation((2, 3))
    assert result.passed
    assert result.detail.startswith("N=2: 0.04879494")


def test_run_suite_quick_passes() -> None:
    results = run_suite(quick=True)
    assert [result.name for result in results] == [
        "two-channel closed form",
        "oracle equivalence",
        "classification fit",
        "diagram loop counts",
        "cyclic closed form",
        "cyclic optimality",
        "dilation consistency",
        "capacity activation",
    ]
    assert all(result.passed for result in results)


def test_run_suite_fails_below_rounding() -> None:
    results = {result.name: result for result in run_suite(quick=True, tolerance=1e-30)}
    assert not results["oracle equivalence"].passed
    assert results["diagram loop counts"].passed


@pytest.mark.slow
def test_run_suite_full_passes() -> None:
    assert all(result.passed for result in run_suite(workers=2))
