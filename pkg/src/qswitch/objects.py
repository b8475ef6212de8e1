"""Common qswitch objects."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qswitch.channels import KrausChannel, check_density_matrix
from qswitch.errors import QSwitchValueError
from qswitch.perm import Permutation


@dataclass
class SwitchSpec:
    """A quantum switch of N channels over M orderings."""

    #: System dimension.
    d: int

    #: The N channels, channel ``i`` carries label ``i + 1``.
    channels: list[KrausChannel]

    #: The M distinct orderings in superposition.
    perms: list[Permutation]

    #: M×M density matrix of the control system in the basis of ``perms``.
    control: np.ndarray

    def __post_init__(self) -> None:
        """Check dimensions, orderings and the control state."""
        if not self.channels:
            raise QSwitchValueError("A switch needs at least one channel")

        for index, channel in enumerate(self.channels, start=1):
            if channel.d != self.d:
                raise QSwitchValueError(
                    f"Channel {index} has dimension {channel.d}, expected {self.d}"
                )

        check_orderings(self.perms, self.n)
        self.control = check_density_matrix(self.control)
        if self.control.shape != (self.m, self.m):
            raise QSwitchValueError(
                f"Control state has shape {self.control.shape}, "
                f"expected {(self.m, self.m)}"
            )

    @property
    def n(self) -> int:
        """Number of channels."""
        return len(self.channels)

    @property
    def m(self) -> int:
        """Number of orderings."""
        return len(self.perms)


@dataclass
class SwitchOutput:
    """Output of a switch as an M×M array of d×d blocks.

    Block ``(p, q)`` is attached to the control element |πₚ⟩⟨π_q|.
    """

    #: System dimension.
    d: int

    #: Number of orderings.
    m: int

    #: Array of shape ``(M, M, d, d)``.
    blocks: np.ndarray

    def __post_init__(self) -> None:
        """Check the block array shape."""
        self.blocks = np.asarray(self.blocks, dtype=complex)
        if self.blocks.shape != (self.m, self.m, self.d, self.d):
            raise QSwitchValueError(
                f"Blocks have shape {self.blocks.shape}, "
                f"expected {(self.m, self.m, self.d, self.d)}"
            )

    def block(self, p: int, q: int) -> np.ndarray:
        """Return block ``(p, q)``, 0-indexed."""
        return self.blocks[p, q]

    def assemble(self) -> np.ndarray:
        """Return the (dM)×(dM) matrix on system ⊗ control."""
        size = self.d * self.m
        return self.blocks.transpose(2, 0, 3, 1).reshape(size, size)

    def max_deviation(self, other: SwitchOutput) -> float:
        """Return the max elementwise difference to ``other``."""
        if self.blocks.shape != other.blocks.shape:
            raise QSwitchValueError(
                f"Cannot compare outputs of shapes {self.blocks.shape} "
                f"and {other.blocks.shape}"
            )
        return float(np.abs(self.blocks - other.blocks).max())


def check_orderings(perms: list[Permutation], n: int) -> None:
    """Check that ``perms`` are pairwise distinct orderings of ``n`` channels.

    :param perms: Orderings
    :type perms: list[Permutation]
    :param n: Number of channels
    :type n: int
    :raises QSwitchValueError: If the list is empty, sizes differ or an ordering repeats
    """
    if not perms:
        raise QSwitchValueError("A switch needs at least one ordering")

    for perm in perms:
        if perm.n != n:
            raise QSwitchValueError(f"Ordering {perm} does not act on {n} channels")

    if len(set(perms)) != len(perms):
        raise QSwitchValueError("Orderings must be pairwise distinct")


def fourier_control(m: int) -> np.ndarray:
    """Return the control state of the uniform superposition (1/√M) Σ |π⟩."""
    if m < 1:
        raise QSwitchValueError(f"Number of orderings must be positive, got {m}")
    return np.full((m, m), 1 / m, dtype=complex)
