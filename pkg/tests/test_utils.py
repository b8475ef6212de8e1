"""Unit tests for qswitch.utils utility functions."""

from __future__ import annotations

import json

import numpy as np
import pytest

from qswitch.errors import QSwitchValueError
from qswitch.perm import Permutation
from qswitch.utils import (
    basis_ensemble,
    control_from_value,
    decode_matrix,
    dumps,
    encode_matrix,
    named_state,
    perms_from_spec,
    state_from_value,
)

# ---------------------------------------------------------------------------
# Matrix codec
# ---------------------------------------------------------------------------


def test_encode_matrix() -> None:
    m = np.array([[1, 1j], [-0.0, 0.5 - 2j]])
    assert encode_matrix(m) == [[[1.0, 0.0], [0.0, 1.0]], [[0.0, 0.0], [0.5, -2.0]]]


def test_encode_matrix_normalises_signed_zeros() -> None:
    assert json.dumps(encode_matrix(np.array([[-0.0 - 0.0j]]))) == "[[[0.0, 0.0]]]"


def test_decode_matrix_accepts_reals_and_pairs() -> None:
    m = decode_matrix([[1, [0, 1]], [[0, -1], 2.5]])
    assert m.dtype == complex
    assert np.array_equal(m, [[1, 1j], [-1j, 2.5]])


@pytest.mark.parametrize(
    ("data", "match"),
    [
        ([], "non-empty list of rows"),
        ("zero", "non-empty list of rows"),
        ([1, 2], "non-empty list of rows"),
        ([[1, 2], [3]], "rows of different lengths"),
        ([[1, "a"]], "malformed entry"),
        ([[True]], "malformed entry"),
        ([[[1, 2, 3]]], "malformed entry"),
    ],
)
def test_decode_matrix_rejects(data: object, match: str) -> None:
    with pytest.raises(QSwitchValueError, match=match):
        decode_matrix(data)


# ---------------------------------------------------------------------------
# States and controls
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("name", "expected"),
    [
        ("zero", [[1, 0], [0, 0]]),
        ("one", [[0, 0], [0, 1]]),
        ("plus", [[0.5, 0.5], [0.5, 0.5]]),
        ("mixed", [[0.5, 0], [0, 0.5]]),
    ],
)
def test_named_state(name: str, expected: list) -> None:
    assert np.allclose(named_state(name, 2), expected)


def test_named_state_rejects() -> None:
    with pytest.raises(QSwitchValueError, match="Unknown state"):
        named_state("bogus", 2)
    with pytest.raises(QSwitchValueError, match="d >= 2"):
        named_state("one", 1)


def test_state_from_value() -> None:
    assert np.allclose(state_from_value("mixed", 3), np.eye(3) / 3)
    assert np.allclose(state_from_value([[1, 0], [0, 0]], 2), named_state("zero", 2))


def test_basis_ensemble() -> None:
    ensemble = basis_ensemble(3)
    assert [p for p, _ in ensemble.entries] == pytest.approx([1 / 3] * 3)
    assert np.allclose(ensemble.average(), np.eye(3) / 3)


def test_control_from_value() -> None:
    assert np.allclose(control_from_value("fourier", 2), np.full((2, 2), 0.5))
    assert np.allclose(control_from_value([[1, 0], [0, 0]], 2), named_state("zero", 2))
    with pytest.raises(QSwitchValueError, match="Unknown control"):
        control_from_value("plus", 2)


# ---------------------------------------------------------------------------
# Orderings specs
# ---------------------------------------------------------------------------


def test_perms_from_spec_keywords() -> None:
    assert perms_from_spec("cyclic", 3) == [
        Permutation((1, 2, 3)),
        Permutation((2, 3, 1)),
        Permutation((3, 1, 2)),
    ]
    assert len(perms_from_spec("all-pairs", 3)) == 6


def test_perms_from_spec_lists() -> None:
    expected = [Permutation((1, 2)), Permutation((2, 1))]
    assert perms_from_spec("[[1,2],[2,1]]", 2) == expected
    assert perms_from_spec([[1, 2], [2, 1]], 2) == expected


@pytest.mark.parametrize(
    ("spec", "match"),
    [
        ("rotations", "Orderings must be"),
        ('{"a": 1}', "list of lists"),
        ("[1, 2]", "list of lists"),
        ("[[1, 2, 3]]", "does not act on 2 channels"),
    ],
)
def test_perms_from_spec_rejects(spec: str, match: str) -> None:
    with pytest.raises(QSwitchValueError, match=match):
        perms_from_spec(spec, 2)


def test_dumps_is_sorted_and_terminated() -> None:
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
