"""qswitch utilities: matrix codecs, named states and orderings specs."""

from __future__ import annotations

import json
import logging
from typing import TYPE_CHECKING, Any

import numpy as np

from qswitch import constants as const
from qswitch.channels import Ensemble
from qswitch.errors import QSwitchValueError
from qswitch.objects import fourier_control
from qswitch.perm import Permutation, all_permutations, cyclic_permutations

if TYPE_CHECKING:
    from collections.abc import Sequence

log = logging.getLogger("qswitch")

#: Names accepted wherever a state is expected.
NAMED_STATES = ("zero", "one", "plus", "mixed")


def encode_matrix(m: np.ndarray) -> list[list[list[float]]]:
    """Encode a complex matrix as rows of ``[re, im]`` pairs.

    Signed zeros are normalised so equal matrices encode to equal JSON.
    """
    m = np.asarray(m, dtype=complex)
    return [
        [[float(entry.real) + 0.0, float(entry.imag) + 0.0] for entry in row]
        for row in m
    ]


def decode_matrix(data: Any, what: str = "matrix") -> np.ndarray:  # noqa: ANN401
    """Decode rows of ``[re, im]`` pairs (or plain reals) into a complex matrix.

    :param data: Nested lists
    :type data: Any
    :param what: Name used in error messages, defaults to "matrix"
    :type what: str, optional
    :raises QSwitchValueError: If the rows are ragged or entries malformed
    :return: Complex matrix
    :rtype: np.ndarray
    """
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise QSwitchValueError(f"The {what} must be a non-empty list of rows")

    width = len(data[0])
    rows = []
    for row in data:
        if len(row) != width:
            raise QSwitchValueError(f"The {what} has rows of different lengths")

        entries = []
        for entry in row:
            if isinstance(entry, list) and len(entry) == 2:
                entries.append(complex(entry[0], entry[1]))
            elif isinstance(entry, (int, float)) and not isinstance(entry, bool):
                entries.append(complex(entry))
            else:
                raise QSwitchValueError(f"The {what} has a malformed entry {entry!r}")
        rows.append(entries)

    return np.array(rows, dtype=complex)


def named_state(name: str, d: int) -> np.ndarray:
    """Return a named d-dimensional state.

    ``zero`` and ``one`` are |0⟩⟨0| and |1⟩⟨1|, ``plus`` is the uniform
    superposition of the basis and ``mixed`` is I/d.

    :raises QSwitchValueError: If the name is unknown or ``one`` is asked for d = 1
    """
    if name == "zero":
        rho = np.zeros((d, d), dtype=complex)
        rho[0, 0] = 1
    elif name == "one":
        if d < 2:
            raise QSwitchValueError("State 'one' needs d >= 2")
        rho = np.zeros((d, d), dtype=complex)
        rho[1, 1] = 1
    elif name == "plus":
        rho = np.full((d, d), 1 / d, dtype=complex)
    elif name == "mixed":
        rho = np.eye(d, dtype=complex) / d
    else:
        raise QSwitchValueError(
            f"Unknown state '{name}', expected one of {', '.join(NAMED_STATES)}"
        )

    return rho


def state_from_value(value: Any, d: int) -> np.ndarray:  # noqa: ANN401
    """Return the state named by ``value`` or decoded from a matrix."""
    if isinstance(value, str):
        return named_state(value, d)
    return decode_matrix(value, "state")


def basis_ensemble(d: int) -> Ensemble:
    """Return the equiprobable ensemble of the computational basis states."""
    states = []
    for index in range(d):
        rho = np.zeros((d, d), dtype=complex)
        rho[index, index] = 1
        states.append((1 / d, rho))

    return Ensemble(states)


def control_from_value(value: Any, m: int) -> np.ndarray:  # noqa: ANN401
    """Return the Fourier control for ``fourier``, else decode an M×M matrix."""
    if value == const.FOURIER:
        return fourier_control(m)
    if isinstance(value, str):
        raise QSwitchValueError(f"Unknown control '{value}', expected '{const.FOURIER}'")
    return decode_matrix(value, "control state")


def perms_from_spec(spec: str | Sequence[Sequence[int]], n: int) -> list[Permutation]:
    """Expand an orderings spec for ``n`` channels.

    ``cyclic`` gives the N rotations of (1, ..., N), ``all-pairs`` every ordering,
    and anything else is read as a JSON list of orderings such as
    ``[[1,2,3],[2,3,1]]``.

    :param spec: Keyword, JSON text or list of orderings
    :type spec: str | Sequence[Sequence[int]]
    :param n: Number of channels
    :type n: int
    :raises QSwitchValueError: If the value is malformed or an ordering does not act
        on ``n`` channels
    :return: Orderings
    :rtype: list[Permutation]
    """
    if spec == const.PERMS_CYCLIC:
        return list(cyclic_permutations(n))
    if spec == const.PERMS_ALL:
        return list(all_permutations(n))

    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as e:
            raise QSwitchValueError(
                f"Orderings must be '{const.PERMS_CYCLIC}', '{const.PERMS_ALL}' or a "
                f"JSON list of orderings, got {spec!r}"
            ) from e

    if not isinstance(spec, list) or not all(isinstance(perm, list) for perm in spec):
        raise QSwitchValueError(f"Orderings must be a list of lists, got {spec!r}")

    perms = [Permutation.from_json(perm) for perm in spec]
    for perm in perms:
        if perm.n != n:
            raise QSwitchValueError(f"Ordering {perm} does not act on {n} channels")

    return perms


def dumps(report: Any) -> str:  # noqa: ANN401
    """Serialise a report as deterministic JSON."""
    return json.dumps(report, indent=2, sort_keys=True) + "\n"

