"""Dense complex linear algebra for states and channels.

Matrices are :class:`numpy.ndarray` values of ``complex`` dtype. Composite systems
are ordered as Kronecker products, first factor most significant.
"""

from __future__ import annotations

import logging
import math
import string
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
import scipy.linalg
import scipy.special

from qswitch import constants as const
from qswitch.errors import QSwitchValueError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

log = logging.getLogger("qswitch")


@dataclass
class KrausChannel:
    """A channel on a d-dimensional system given by its Kraus operators."""

    #: System dimension.
    d: int

    #: Kraus operators, each a d×d complex matrix.
    kraus_ops: list[np.ndarray]

    #: Optional name, e.g. ``cdpc`` or ``identity``.
    name: str | None = None

    def __post_init__(self) -> None:
        """Convert the Kraus operators to complex arrays and check their shapes."""
        if self.d < 1:
            raise QSwitchValueError(f"Dimension must be positive, got {self.d}")

        self.kraus_ops = [np.asarray(op, dtype=complex) for op in self.kraus_ops]
        if not self.kraus_ops:
            raise QSwitchValueError("A channel needs at least one Kraus operator")

        for index, op in enumerate(self.kraus_ops):
            if op.shape != (self.d, self.d):
                raise QSwitchValueError(
                    f"Kraus operator {index} has shape {op.shape}, "
                    f"expected {(self.d, self.d)}"
                )

    @property
    def k(self) -> int:
        """Number of Kraus operators."""
        return len(self.kraus_ops)

    @property
    def stacked(self) -> np.ndarray:
        """Kraus operators as one ``(k, d, d)`` array."""
        return np.stack(self.kraus_ops)


@dataclass
class Isometry:
    """An isometry from a d-dimensional system into a D-dimensional one."""

    #: Input dimension d.
    input_dim: int

    #: Output dimension D.
    output_dim: int

    #: D×d matrix.
    matrix: np.ndarray

    def __post_init__(self) -> None:
        """Check the matrix shape."""
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.shape != (self.output_dim, self.input_dim):
            raise QSwitchValueError(
                f"Isometry matrix has shape {self.matrix.shape}, "
                f"expected {(self.output_dim, self.input_dim)}"
            )

    @property
    def env_dim(self) -> int:
        """Dimension of the environment factor, ``D / d``."""
        return self.output_dim // self.input_dim


@dataclass
class Ensemble:
    """A classical-quantum ensemble of states with probabilities."""

    #: Pairs of (probability, density matrix), all of the same dimension.
    entries: list[tuple[float, np.ndarray]]

    def __post_init__(self) -> None:
        """Check probabilities, dimensions and states."""
        if not self.entries:
            raise QSwitchValueError("An ensemble needs at least one state")

        entries = []
        dims = set()
        for p, rho in self.entries:
            if not -const.TOLERANCE <= p <= 1 + const.TOLERANCE:
                raise QSwitchValueError(f"Probability {p} is outside [0, 1]")
            rho = check_density_matrix(rho)
            dims.add(rho.shape[0])
            entries.append((float(p), rho))

        if len(dims) != 1:
            raise QSwitchValueError(f"Ensemble states have mixed dimensions {dims}")

        total = sum(p for p, _ in entries)
        if abs(total - 1) > const.TOLERANCE:
            raise QSwitchValueError(f"Ensemble probabilities sum to {total}, not 1")

        self.entries = entries

    @property
    def d(self) -> int:
        """Dimension of the states."""
        return self.entries[0][1].shape[0]

    def average(self) -> np.ndarray:
        """Return the average state Σ pₓ ρₓ."""
        return sum((p * rho for p, rho in self.entries), np.zeros((self.d, self.d), complex))


def density_matrix_defect(rho: np.ndarray) -> str | None:
    """Describe why ``rho`` is not a density matrix, or return ``None``."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] == 0:
        return f"shape {rho.shape} is not square"

    hermiticity = np.abs(rho - rho.conj().T).max()
    if hermiticity > const.TOLERANCE:
        return f"not Hermitian (max |ρ − ρ†| = {hermiticity:.3g})"

    trace = np.trace(rho)
    if abs(trace - 1) > const.TOLERANCE:
        return f"trace is {trace:.6g}, not 1"

    smallest = scipy.linalg.eigvalsh(rho).min()
    if smallest < -const.TOLERANCE:
        return f"not positive semidefinite (smallest eigenvalue {smallest:.3g})"

    return None


def is_density_matrix(rho: np.ndarray) -> bool:
    """Return whether ``rho`` is Hermitian, unit trace and positive semidefinite."""
    return density_matrix_defect(rho) is None


def check_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Return ``rho`` as a complex array, raising if it is not a density matrix.

    :param rho: Candidate density matrix
    :type rho: np.ndarray
    :raises QSwitchValueError: If ``rho`` breaks a density matrix invariant
    :return: ``rho`` as a complex array
    :rtype: np.ndarray
    """
    defect = density_matrix_defect(rho)
    if defect:
        raise QSwitchValueError(f"Invalid density matrix: {defect}")
    return np.asarray(rho, dtype=complex)


def make_cdpc(d: int) -> KrausChannel:
    """Build the completely depolarising channel on a d-dimensional system.

    The d² Kraus operators are |i⟩⟨j|/√d in row-major (i, j) order.

    :param d: System dimension, at least 2
    :type d: int
    :raises QSwitchValueError: If ``d < 2``
    :return: The completely depolarising channel
    :rtype: KrausChannel
    """
    if d < 2:
        raise QSwitchValueError(f"A completely depolarising channel needs d >= 2, got {d}")

    ops = []
    for i in range(d):
        for j in range(d):
            op = np.zeros((d, d), dtype=complex)
            op[i, j] = 1 / math.sqrt(d)
            ops.append(op)

    return KrausChannel(d, ops, name=const.CDPC)


def make_identity_channel(d: int) -> KrausChannel:
    """Build the identity channel with the single Kraus operator I_d."""
    return KrausChannel(d, [np.eye(d, dtype=complex)], name=const.IDENTITY)


def apply(ch: KrausChannel, rho: np.ndarray) -> np.ndarray:
    """Return Σᵢ Kᵢ ρ Kᵢ†.

    :raises QSwitchValueError: If ``rho`` is not d×d
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ch.d, ch.d):
        raise QSwitchValueError(
            f"Input has shape {rho.shape}, channel expects {(ch.d, ch.d)}"
        )

    ops = ch.stacked
    return np.einsum("kij,jl,kml->im", ops, rho, ops.conj())


def completeness_defect(ch: KrausChannel) -> float:
    """Return max elementwise |Σ Kᵢ†Kᵢ − I|."""
    ops = ch.stacked
    total = np.einsum("kji,kjl->il", ops.conj(), ops)
    return float(np.abs(total - np.eye(ch.d)).max())


def validate_cptp(ch: KrausChannel, tol: float = const.TOLERANCE) -> bool:
    """Return whether the Kraus operators satisfy Σ Kᵢ†Kᵢ = I within ``tol``."""
    return completeness_defect(ch) <= tol


def is_completely_depolarising(ch: KrausChannel, tol: float = const.TOLERANCE) -> bool:
    """Return whether ``ch`` maps every matrix unit |a⟩⟨b| to δ_ab I/d.

    Detects completely depolarising channels numerically whatever their Kraus
    decomposition.
    """
    if not validate_cptp(ch, tol):
        return False

    target = np.eye(ch.d) / ch.d
    for a in range(ch.d):
        for b in range(ch.d):
            unit = np.zeros((ch.d, ch.d), dtype=complex)
            unit[a, b] = 1
            expected = target if a == b else 0
            if np.abs(apply(ch, unit) - expected).max() > tol:
                return False

    return True


def stinespring_dilation(ch: KrausChannel) -> Isometry:
    """Return the isometry V = Σᵢ Kᵢ ⊗ |i⟩_E.

    The output is ordered system ⊗ environment and the environment basis follows
    the order of the Kraus operators.

    :param ch: Channel to dilate
    :type ch: KrausChannel
    :return: Isometry of shape (d·k)×d
    :rtype: Isometry
    """
    matrix = ch.stacked.transpose(1, 0, 2).reshape(ch.d * ch.k, ch.d)
    return Isometry(input_dim=ch.d, output_dim=ch.d * ch.k, matrix=matrix)


def isometry_defect(v: Isometry) -> float:
    """Return max elementwise |V†V − I|."""
    gram = v.matrix.conj().T @ v.matrix
    return float(np.abs(gram - np.eye(v.input_dim)).max())


def partial_trace(m: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every tensor factor of ``m`` whose index is not in ``keep``.

    :param m: Square matrix on the product space of ``dims``
    :type m: np.ndarray
    :param dims: Dimensions of the tensor factors
    :type dims: Sequence[int]
    :param keep: Indices of the factors to keep; empty for the full trace
    :type keep: Iterable[int]
    :raises QSwitchValueError: If the dimensions do not match the matrix
    :return: Reduced matrix on the kept factors, 1×1 for the full trace
    :rtype: np.ndarray
    """
    m = np.asarray(m, dtype=complex)
    dims = [int(dim) for dim in dims]
    kept = sorted(set(keep))
    size = math.prod(dims)
    if m.ndim != 2 or m.shape != (size, size):
        raise QSwitchValueError(
            f"Matrix of shape {m.shape} does not act on factors of dimensions {dims}"
        )

    if any(not 0 <= index < len(dims) for index in kept):
        raise QSwitchValueError(f"Kept factors {kept} are outside 0..{len(dims) - 1}")

    n = len(dims)
    rows = string.ascii_letters[:n]
    cols = "".join(
        string.ascii_letters[n + index] if index in kept else rows[index]
        for index in range(n)
    )
    out = "".join(rows[index] for index in kept) + "".join(cols[index] for index in kept)

    reduced = np.einsum(f"{rows}{cols}->{out}", m.reshape(dims * 2))
    kept_size = math.prod(dims[index] for index in kept)
    return reduced.reshape(kept_size, kept_size)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Return the von Neumann entropy of ``rho`` in bits.

    Eigenvalues within the tolerance below zero are clamped to zero.

    :param rho: Density matrix
    :type rho: np.ndarray
    :raises QSwitchValueError: If ``rho`` is not a density matrix
    :return: −Σ λ log₂ λ with 0 log 0 = 0
    :rtype: float
    """
    rho = check_density_matrix(rho)
    eigenvalues = np.clip(scipy.linalg.eigvalsh(rho), 0, 1)
    return float(scipy.special.entr(eigenvalues).sum() / math.log(2))


def holevo_quantity(e: Ensemble) -> float:
    """Return χ = S(Σ pₓ ρₓ) − Σ pₓ S(ρₓ) in bits."""
    chi = von_neumann_entropy(e.average()) - sum(
        p * von_neumann_entropy(rho) for p, rho in e.entries
    )
    log.debug("Holevo quantity of %d states: %.12g", len(e.entries), chi)
    return chi


def random_density_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    """Draw a full-rank density matrix G G† / tr(G G†) with Gaussian G."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def random_channel(d: int, k: int, rng: np.random.Generator) -> KrausChannel:
    """Draw a channel with ``k`` Gaussian Kraus operators normalised by S^{-1/2}.

    :param d: System dimension
    :type d: int
    :param k: Number of Kraus operators
    :type k: int
    :param rng: Random generator
    :type rng: np.random.Generator
    :return: A CPTP channel
    :rtype: KrausChannel
    """
    g = rng.standard_normal((k, d, d)) + 1j * rng.standard_normal((k, d, d))
    s = np.einsum("kji,kjl->il", g.conj(), g)
    eigenvalues, vectors = scipy.linalg.eigh(s)
    inverse_sqrt = (vectors / np.sqrt(eigenvalues)) @ vectors.conj().T
    return KrausChannel(d, list(g @ inverse_sqrt), name="random")
