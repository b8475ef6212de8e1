"""Closed-form switch evaluator for completely depolarising channels.

Every interference term of a switch of N completely depolarising channels is
either ``w * rho`` or ``w * I tr(rho) / d`` with ``w = d ** (c - 1 - N)``, where
``c`` is the number of cycles of C_{ππ′}. The term is proportional to the identity
channel exactly when 0 and π(N) share a cycle of C_{ππ′}.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

from qswitch import constants as const
from qswitch.channels import check_density_matrix, is_completely_depolarising
from qswitch.errors import QSwitchValueError
from qswitch.objects import SwitchOutput, check_orderings
from qswitch.perm import Permutation, build_c_pair, cycle_decomposition, same_cycle

if TYPE_CHECKING:
    from collections.abc import Sequence

    from qswitch.objects import SwitchSpec

log = logging.getLogger("qswitch.switch")


@dataclass(frozen=True)
class TermClass:
    """Classification of one interference term N_{ππ′}."""

    #: ``IdentityProportional`` or ``DepolarisingProportional``.
    kind: str

    #: Number of cycles of C_{ππ′}, fixed points included.
    cycle_count: int

    #: Exponent of d in the term's coefficient, ``cycle_count - 1 - n``.
    coefficient_log_d: int

    #: Number of channels.
    n: int

    #: Whether 0 and π′(N) share a cycle of C_{ππ′}.
    cds_sortable: bool

    @property
    def is_identity(self) -> bool:
        """Whether the term is proportional to the identity channel."""
        return self.kind == const.KIND_IDENTITY

    def weight(self, d: int) -> Fraction:
        """Return the exact coefficient d^{c−1−N}."""
        return Fraction(d) ** self.coefficient_log_d


@lru_cache(maxsize=None)
def classify_term(pi: Permutation, pi_prime: Permutation) -> TermClass:
    """Classify N_{ππ′} from the cycle decomposition of C_{ππ′}.

    :param pi: Ordering on the ket side
    :type pi: Permutation
    :param pi_prime: Ordering on the bra side
    :type pi_prime: Permutation
    :raises QSwitchValueError: If the orderings have different sizes
    :return: Kind, cycle count and coefficient exponent of the term
    :rtype: TermClass
    """
    decomposition = cycle_decomposition(build_c_pair(pi, pi_prime))
    n = pi.n
    transmitting = same_cycle(decomposition, 0, pi(n))
    return TermClass(
        kind=const.KIND_IDENTITY if transmitting else const.KIND_DEPOLARISING,
        cycle_count=decomposition.cycle_count,
        coefficient_log_d=decomposition.cycle_count - 1 - n,
        n=n,
        cds_sortable=same_cycle(decomposition, 0, pi_prime(n)),
    )


def term_channel(
    pi: Permutation, pi_prime: Permutation, d: int, rho: np.ndarray
) -> np.ndarray:
    """Return N_{ππ′}(ρ) for N completely depolarising channels of dimension d."""
    term = classify_term(pi, pi_prime)
    rho = np.asarray(rho, dtype=complex)
    weight = float(d) ** term.coefficient_log_d
    if term.is_identity:
        return weight * rho

    return weight * np.trace(rho) * np.eye(d, dtype=complex) / d


def switch_output_fast(
    d: int,
    perms: Sequence[Permutation],
    control: np.ndarray,
    rho: np.ndarray,
) -> SwitchOutput:
    """Evaluate a switch of completely depolarising channels in closed form.

    :param d: System dimension
    :type d: int
    :param perms: Distinct orderings of the channels
    :type perms: Sequence[Permutation]
    :param control: M×M control density matrix
    :type control: np.ndarray
    :param rho: Input density matrix
    :type rho: np.ndarray
    :raises QSwitchValueError: If the orderings, control or input are invalid
    :return: The switch output
    :rtype: SwitchOutput
    """
    perms = list(perms)
    check_orderings(perms, perms[0].n if perms else 0)
    m = len(perms)
    control = check_density_matrix(control)
    if control.shape != (m, m):
        raise QSwitchValueError(
            f"Control state has shape {control.shape}, expected {(m, m)}"
        )

    rho = check_density_matrix(rho)
    if rho.shape != (d, d):
        raise QSwitchValueError(f"Input has shape {rho.shape}, expected {(d, d)}")

    blocks = np.zeros((m, m, d, d), dtype=complex)
    for p, pi in enumerate(perms):
        for q, pi_prime in enumerate(perms):
            blocks[p, q] = control[p, q] * term_channel(pi, pi_prime, d, rho)

    return SwitchOutput(d, m, blocks)


def is_cdpc_spec(spec: SwitchSpec, tol: float = const.TOLERANCE) -> bool:
    """Return whether every channel of ``spec`` is completely depolarising."""
    flags = [is_completely_depolarising(channel, tol) for channel in spec.channels]
    log.debug("Completely depolarising channels: %s", flags)
    return all(flags)
