"""Unit tests for qswitch.task."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np
import pytest
from pytest_mock import MockerFixture

from qswitch import task
from qswitch.configuration import RunConfig
from qswitch.errors import QSwitchCheckError, QSwitchSpecError, QSwitchValueError
from qswitch.utils import decode_matrix
from qswitch.verify import CheckResult


def _blocks(report: dict) -> list[list[np.ndarray]]:
    return [[decode_matrix(block) for block in row] for row in report["blocks"]]


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------


def test_load_switch_spec_yaml(resource_path_root: Path) -> None:
    spec = task.load_switch_spec(resource_path_root / "switch" / "cdpc2.yml")
    assert (spec.d, spec.n, spec.m) == (2, 2, 2)
    assert np.allclose(spec.control, np.full((2, 2), 0.5))


def test_load_switch_spec_kraus(resource_path_root: Path) -> None:
    spec = task.load_switch_spec(resource_path_root / "switch" / "kraus-flip.json")
    assert spec.channels[0].k == 1
    assert np.allclose(spec.channels[0].kraus_ops[0], [[0, 1], [1, 0]])


def test_load_switch_spec_channel_dimension(resource_path_root: Path) -> None:
    spec = task.load_switch_spec(resource_path_root / "switch" / "kraus-dim.json")
    assert [channel.k for channel in spec.channels] == [1, 1]
    assert np.allclose(spec.channels[1].kraus_ops[0], [[0, 1], [1, 0]])


def test_load_switch_spec_channel_dimension_mismatch() -> None:
    with pytest.raises(QSwitchValueError, match="Channel 1 acts on dimension 3"):
        task.load_switch_spec({
            "d": 2,
            "channels": [{"d": 3, "kraus": [[[1, 0], [0, 1]]]}],
            "perms": [[1]],
        })


def test_load_switch_spec_from_dict() -> None:
    spec = task.load_switch_spec({
        "d": 3,
        "channels": [{"kind": "cdpc"}],
        "perms": [[1]],
    })
    assert spec.channels[0].k == 9


def test_load_switch_spec_schema_errors(resource_path_root: Path) -> None:
    with pytest.raises(QSwitchSpecError, match="JSON Schema Validation Error") as e:
        task.load_switch_spec(resource_path_root / "switch" / "invalid.json")
    assert len(e.value.errors) == 2


def test_load_switch_spec_malformed(resource_path_root: Path) -> None:
    with pytest.raises(QSwitchSpecError, match="Malformed document"):
        task.load_switch_spec(resource_path_root / "switch" / "malformed.json")


def test_load_switch_spec_missing_file(tmp_path: Path) -> None:
    with pytest.raises(QSwitchSpecError, match="Cannot read"):
        task.load_switch_spec(tmp_path / "missing.json")


def test_load_switch_spec_not_cptp(resource_path_root: Path) -> None:
    with pytest.raises(QSwitchValueError, match="Channel 1 is not trace preserving"):
        task.load_switch_spec(resource_path_root / "switch" / "not-cptp.json")


def test_load_switch_spec_repeated_ordering() -> None:
    with pytest.raises(QSwitchValueError, match="distinct"):
        task.load_switch_spec({
            "d": 2,
            "channels": [{"kind": "cdpc"}] * 2,
            "perms": [[1, 2], [1, 2]],
        })


def test_load_ensemble(resource_path_root: Path) -> None:
    ensemble = task.load_ensemble(resource_path_root / "switch" / "ensemble.yml", 2)
    assert [p for p, _ in ensemble.entries] == [0.5, 0.5]
    assert np.allclose(ensemble.average(), np.eye(2) / 2)


def test_load_ensemble_basis() -> None:
    assert task.load_ensemble("basis", 3).d == 3


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------


def test_evaluate_cdpc_both(tmp_path: Path) -> None:
    output = tmp_path / "out.json"
    task.evaluate(
        RunConfig("evaluate", d=2, n=2, rho="plus", mode="both", output=output)
    )
    report = json.loads(output.read_text())
    blocks = _blocks(report)
    assert report["mode"] == "both"
    assert report["max_deviation"] < 1e-10
    assert (report["N"], report["M"]) == (2, 2)
    assert np.allclose(blocks[0][0], np.eye(2) / 4)
    assert np.allclose(blocks[0][1], np.full((2, 2), 0.5) / 8)


def test_evaluate_three_cyclic_cdpcs(tmp_path: Path) -> None:
    output = tmp_path / "out.json"
    task.evaluate(RunConfig("evaluate", d=2, n=3, rho="zero", output=output))
    blocks = _blocks(json.loads(output.read_text()))
    rho = np.diag([1, 0])
    assert np.abs(blocks[1][1] - np.eye(2) / 6).max() < 1e-12
    assert np.abs(blocks[0][2] - rho / 12).max() < 1e-12


def test_evaluate_spec_writes_stdout(
    resource_path_root: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    task.evaluate(
        RunConfig("evaluate", spec=resource_path_root / "switch" / "identity2.json")
    )
    report = json.loads(capsys.readouterr().out)
    blocks = _blocks(report)
    assert np.allclose(blocks[0][1], np.diag([0.5, 0]))


def test_evaluate_state_and_control_files(resource_path_root: Path, tmp_path: Path) -> None:
    output = tmp_path / "out.json"
    task.evaluate(
        RunConfig(
            "evaluate",
            d=2,
            n=2,
            rho=str(resource_path_root / "switch" / "state-plus.json"),
            control=str(resource_path_root / "switch" / "control-diag.json"),
            mode="fast",
            output=output,
        )
    )
    blocks = _blocks(json.loads(output.read_text()))
    assert np.allclose(blocks[0][1], 0)
    assert np.allclose(blocks[1][1], np.eye(2) / 4)


def test_evaluate_is_deterministic(tmp_path: Path) -> None:
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    task.evaluate(RunConfig("evaluate", d=3, n=2, output=first))
    task.evaluate(RunConfig("evaluate", d=3, n=2, output=second))
    assert first.read_bytes() == second.read_bytes()


def test_evaluate_fast_rejects_other_channels(resource_path_root: Path) -> None:
    cfg = RunConfig(
        "evaluate", spec=resource_path_root / "switch" / "kraus-flip.json", mode="fast"
    )
    with pytest.raises(QSwitchValueError, match="only handles completely depolarising"):
        task.evaluate(cfg)


def test_evaluate_bruteforce_other_channels(resource_path_root: Path, tmp_path: Path) -> None:
    output = tmp_path / "out.json"
    task.evaluate(
        RunConfig(
            "evaluate", spec=resource_path_root / "switch" / "kraus-flip.json", output=output
        )
    )
    blocks = _blocks(json.loads(output.read_text()))
    assert np.allclose(blocks[0][1], np.diag([0, 0.5]))


def test_evaluate_needs_dimension() -> None:
    with pytest.raises(QSwitchValueError, match="needs d"):
        task.evaluate(RunConfig("evaluate", n=2))


def test_evaluate_unknown_state() -> None:
    with pytest.raises(QSwitchValueError, match="neither a named state"):
        task.evaluate(RunConfig("evaluate", d=2, n=2, rho="bogus"))


def test_evaluate_reports_disagreement(mocker: MockerFixture, tmp_path: Path) -> None:
    mocker.patch("qswitch.objects.SwitchOutput.max_deviation", return_value=1.0)
    with pytest.raises(QSwitchCheckError, match="Evaluators disagree") as e:
        task.evaluate(
            RunConfig("evaluate", d=2, n=2, mode="both", output=tmp_path / "out.json")
        )
    assert "exceeds tolerance" in e.value.failures[0]


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def test_classify_csv(tmp_path: Path) -> None:
    output = tmp_path / "out.csv"
    task.classify(RunConfig("classify", n=3, perms="all-pairs", output_format="csv", output=output))
    rows = list(csv.DictReader(io.StringIO(output.read_text())))
    assert len(rows) == 36
    assert list(rows[0])[:5] == ["pi", "pi_prime", "kind", "cycle_count", "coeff_exponent"]

    row = next(r for r in rows if r["pi"] == "(1,2,3)" and r["pi_prime"] == "(2,3,1)")
    assert row["kind"] == "IdentityProportional"
    assert row["cycle_count"] == "2"
    assert row["coeff_exponent"] == "-2"
    assert row["mutually_cyclic"] == "True"
    assert row["diagram_kind"] == row["kind"]


def test_classify_json(capsys: pytest.CaptureFixture[str]) -> None:
    task.classify(RunConfig("classify", n=2, perms="all-pairs", output_format="json"))
    rows = json.loads(capsys.readouterr().out)
    assert [row["kind"] for row in rows] == [
        "DepolarisingProportional",
        "IdentityProportional",
        "IdentityProportional",
        "DepolarisingProportional",
    ]


def test_classify_rejects_large_n() -> None:
    with pytest.raises(QSwitchValueError, match="limited to N <= 6"):
        task.classify(RunConfig("classify", n=7))


def test_classify_reports_disagreement(mocker: MockerFixture) -> None:
    mocker.patch("qswitch.task.is_information_transmitting", return_value=True)
    with pytest.raises(QSwitchCheckError, match="disagree") as e:
        task.classify(RunConfig("classify", n=2, perms="all-pairs"))
    assert e.value.failures == ["(1,2) (1,2)", "(2,1) (2,1)"]


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def test_search_exhaustive(tmp_path: Path) -> None:
    output = tmp_path / "out.json"
    task.search(RunConfig("search", n=3, m=3, d=2, check_cyclic=True, output=output))
    report = json.loads(output.read_text())
    assert (report["N"], report["M"], report["d"]) == (3, 3, 2)
    assert report["mode"] == "exhaustive"
    assert report["subsets_scanned"] == 20
    assert report["objective"] == 0.5
    assert report["cyclic_objective"] == "1/2"
    assert len(report["maximizers"]) == 2
    assert report["maximizers"][0]["perms"] == [[1, 2, 3], [2, 3, 1], [3, 1, 2]]


def test_search_sampled(tmp_path: Path) -> None:
    output = tmp_path / "out.json"
    cfg = RunConfig("search", n=5, m=2, d=2, sample=True, samples=50, seed=3, output=output)
    task.search(cfg)
    report = json.loads(output.read_text())
    assert report["mode"] == "sampled"
    assert (report["seed"], report["samples"], report["subsets_scanned"]) == (3, 50, 50)


def test_search_exhaustive_rejects_large_n() -> None:
    with pytest.raises(QSwitchValueError, match="use the sampled search"):
        task.search(RunConfig("search", n=5, m=2, d=2))


def test_search_check_cyclic_fails(mocker: MockerFixture, tmp_path: Path) -> None:
    mocker.patch("qswitch.task.is_pairwise_mutually_cyclic", return_value=False)
    with pytest.raises(QSwitchCheckError, match="not pairwise cyclic") as e:
        task.search(
            RunConfig("search", n=2, m=2, d=2, check_cyclic=True, output=tmp_path / "o.json")
        )
    assert e.value.failures == ["(1,2) (2,1)"]


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_writes_results(mocker: MockerFixture, tmp_path: Path) -> None:
    run_suite = mocker.patch(
        "qswitch.task.run_suite", return_value=[CheckResult("a check", True, 0.0, "fine")]
    )
    output = tmp_path / "out.json"
    task.verify(RunConfig("verify", quick=True, seed=5, output=output))
    run_suite.assert_called_once_with(quick=True, tolerance=1e-10, seed=5, workers=1)
    assert json.loads(output.read_text()) == [
        {"name": "a check", "status": "OK", "max_error": 0.0, "detail": "fine"}
    ]


def test_verify_raises_on_failure(mocker: MockerFixture) -> None:
    mocker.patch(
        "qswitch.task.run_suite",
        return_value=[
            CheckResult("a check", True, 0.0, "fine"),
            CheckResult("another check", False, 1.0, "off"),
        ],
    )
    with pytest.raises(QSwitchCheckError, match="Verification failed") as e:
        task.verify(RunConfig("verify"))
    assert len(e.value.failures) == 1
    assert "another check" in e.value.failures[0]


# ---------------------------------------------------------------------------
# holevo
# ---------------------------------------------------------------------------


def test_holevo_basis(tmp_path: Path) -> None:
    output = tmp_path / "out.json"
    task.holevo(RunConfig("holevo", n=2, d=2, output=output))
    report = json.loads(output.read_text())
    assert report["chi"] == pytest.approx(0.048794940695398, rel=1e-9)
    assert report["chi_control_discarded"] == pytest.approx(0, abs=1e-10)
    assert report["objective"] == 0.25
    assert report["objective_exact"] == "1/4"
    assert report["perms"] == [[1, 2], [2, 1]]


def test_holevo_ensemble_document(resource_path_root: Path, tmp_path: Path) -> None:
    output = tmp_path / "out.json"
    task.holevo(
        RunConfig(
            "holevo",
            n=2,
            d=2,
            ensemble=str(resource_path_root / "switch" / "ensemble.yml"),
            output=output,
        )
    )
    report = json.loads(output.read_text())
    assert report["chi"] == pytest.approx(0.048794940695398, rel=1e-9)
