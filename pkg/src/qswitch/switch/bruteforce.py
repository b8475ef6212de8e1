"""Reference switch evaluator that sums over every joint Kraus index.

For orderings π and π′ the interference term is

    N_{ππ′}(ρ) = Σ_j K^{π(1)}_{j_{π(1)}} ⋯ K^{π(N)}_{j_{π(N)}} ρ
                     (K^{π′(1)}_{j_{π′(1)}} ⋯ K^{π′(N)}_{j_{π′(N)}})†

where channel ``i`` uses the same Kraus index ``j_i`` on both sides, so channel
π(N) acts on ρ first.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from qswitch import constants as const
from qswitch.channels import (
    KrausChannel,
    check_density_matrix,
    partial_trace,
    stinespring_dilation,
)
from qswitch.errors import QSwitchValueError
from qswitch.objects import SwitchOutput, SwitchSpec
from qswitch.perm import Permutation

if TYPE_CHECKING:
    from collections.abc import Sequence

log = logging.getLogger("qswitch.switch")


class TermFit(NamedTuple):
    """Least-squares fit of a term as ``alpha * rho + beta * I``."""

    alpha: complex
    beta: complex
    residual: float


def _check_term_inputs(
    channels: Sequence[KrausChannel], perms: Sequence[Permutation]
) -> int:
    if not channels:
        raise QSwitchValueError("At least one channel is required")

    d = channels[0].d
    for index, channel in enumerate(channels, start=1):
        if channel.d != d:
            raise QSwitchValueError(
                f"Channel {index} has dimension {channel.d}, expected {d}"
            )

    for perm in perms:
        if perm.n != len(channels):
            raise QSwitchValueError(
                f"Ordering {perm} does not act on {len(channels)} channels"
            )

    return d


def chain_operators(channels: Sequence[KrausChannel], perm: Permutation) -> np.ndarray:
    """Return K^{π(1)} ⋯ K^{π(N)} for every joint Kraus index.

    The joint index is ordered by channel label, first label most significant,
    so two chains built from different orderings line up entry by entry.

    :param channels: Channels, channel ``i`` carries label ``i + 1``
    :type channels: Sequence[KrausChannel]
    :param perm: Ordering of the product
    :type perm: Permutation
    :raises QSwitchValueError: If dimensions or sizes do not match
    :return: Array of shape ``(k_1 ⋯ k_N, d, d)``
    :rtype: np.ndarray
    """
    d = _check_term_inputs(channels, [perm])
    ops = np.eye(d, dtype=complex)
    for label in perm.images:
        ops = np.einsum("...ij,kjl->...kil", ops, channels[label - 1].stacked)

    n = perm.n
    order = tuple(int(axis) for axis in np.argsort(perm.images))
    return ops.transpose((*order, n, n + 1)).reshape(-1, d, d)


def contract_chains(left: np.ndarray, right: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Return Σ_j L_j ρ R_j† for stacked chains ``left`` and ``right``."""
    return np.einsum("aij,alj->il", left @ rho, right.conj())


def interference_term(
    channels: Sequence[KrausChannel],
    pi: Permutation,
    pi_prime: Permutation,
    rho: np.ndarray,
) -> np.ndarray:
    """Compute the interference term N_{ππ′}(ρ) by explicit Kraus summation.

    ``rho`` may be any d×d matrix; the term is linear in it.

    :param channels: Channels, channel ``i`` carries label ``i + 1``
    :type channels: Sequence[KrausChannel]
    :param pi: Ordering on the ket side
    :type pi: Permutation
    :param pi_prime: Ordering on the bra side
    :type pi_prime: Permutation
    :param rho: Input operator
    :type rho: np.ndarray
    :raises QSwitchValueError: If dimensions or sizes do not match
    :return: d×d matrix
    :rtype: np.ndarray
    """
    d = _check_term_inputs(channels, [pi, pi_prime])
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d, d):
        raise QSwitchValueError(f"Input has shape {rho.shape}, expected {(d, d)}")

    left = chain_operators(channels, pi)
    right = left if pi == pi_prime else chain_operators(channels, pi_prime)
    return contract_chains(left, right, rho)


def switch_output(spec: SwitchSpec, rho: np.ndarray) -> SwitchOutput:
    """Evaluate the switch on ``rho`` by explicit Kraus summation.

    Block ``(p, q)`` is ``control[p, q] * N_{πₚπ_q}(ρ)``. Chains are computed
    once per ordering.

    :param spec: Switch to evaluate
    :type spec: SwitchSpec
    :param rho: Input density matrix
    :type rho: np.ndarray
    :raises QSwitchValueError: If ``rho`` is not a d×d density matrix
    :return: The switch output
    :rtype: SwitchOutput
    """
    rho = check_density_matrix(rho)
    if rho.shape != (spec.d, spec.d):
        raise QSwitchValueError(f"Input has shape {rho.shape}, expected {(spec.d, spec.d)}")

    log.debug(
        "Summing %d joint Kraus indices over %d orderings",
        np.prod([channel.k for channel in spec.channels]),
        spec.m,
    )
    chains = [chain_operators(spec.channels, perm) for perm in spec.perms]
    blocks = np.zeros((spec.m, spec.m, spec.d, spec.d), dtype=complex)
    for p in range(spec.m):
        for q in range(spec.m):
            blocks[p, q] = spec.control[p, q] * contract_chains(chains[p], chains[q], rho)

    return SwitchOutput(spec.d, spec.m, blocks)


def measure_control(
    out: SwitchOutput, projector: np.ndarray
) -> tuple[float, np.ndarray]:
    """Project the control of a switch output and return the conditional system state.

    :param out: Switch output
    :type out: SwitchOutput
    :param projector: M×M orthogonal projector on the control
    :type projector: np.ndarray
    :raises QSwitchValueError: If ``projector`` is not an M×M projector, or the
        outcome is unreachable
    :return: Outcome probability and the normalised d×d conditional state
    :rtype: tuple[float, np.ndarray]
    """
    projector = np.asarray(projector, dtype=complex)
    if projector.shape != (out.m, out.m):
        raise QSwitchValueError(
            f"Projector has shape {projector.shape}, expected {(out.m, out.m)}"
        )

    if (
        np.abs(projector @ projector - projector).max() > const.TOLERANCE
        or np.abs(projector - projector.conj().T).max() > const.TOLERANCE
    ):
        raise QSwitchValueError("Control measurement operator is not a projector")

    lifted = np.kron(np.eye(out.d), projector)
    full = out.assemble()
    probability = float(np.real(np.trace(lifted @ full)))
    if probability < const.UNREACHABLE_PROBABILITY:
        raise QSwitchValueError(
            f"unreachable outcome (probability {probability:.3g})"
        )

    state = partial_trace(lifted @ full @ lifted, [out.d, out.m], {0}) / probability
    return probability, state


def _order_compositions(
    f: KrausChannel, g: KrausChannel
) -> tuple[np.ndarray, np.ndarray]:
    """Return the isometries of f∘g and g∘f, both ordered system ⊗ E_f ⊗ E_g."""
    d = f.d
    vf = stinespring_dilation(f).matrix
    vg = stinespring_dilation(g).matrix

    f_after_g = np.kron(vf, np.eye(g.k)) @ vg
    g_after_f = np.kron(vg, np.eye(f.k)) @ vf
    g_after_f = g_after_f.reshape(d, g.k, f.k, d).transpose(0, 2, 1, 3)
    return f_after_g, g_after_f.reshape(d * f.k * g.k, d)


def dilated_interference_deviation(
    f: KrausChannel, g: KrausChannel, rho: np.ndarray
) -> float:
    """Compare the dilated two-order interference with the Kraus sum.

    Both orders of ``f`` and ``g`` are composed as isometries, the cross term
    W_{fg} ρ W_{gf}† is formed and every environment is traced out. The result is
    compared with the interference term of orderings (1,2) and (2,1) on channels
    ``[f, g]``.

    :param f: Channel with label 1
    :type f: KrausChannel
    :param g: Channel with label 2
    :type g: KrausChannel
    :param rho: Input density matrix
    :type rho: np.ndarray
    :raises QSwitchValueError: If the dimensions do not match
    :return: Max elementwise difference between the two computations
    :rtype: float
    """
    if f.d != g.d:
        raise QSwitchValueError(f"Channels have dimensions {f.d} and {g.d}")

    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (f.d, f.d):
        raise QSwitchValueError(f"Input has shape {rho.shape}, expected {(f.d, f.d)}")

    f_after_g, g_after_f = _order_compositions(f, g)
    dilated = partial_trace(
        f_after_g @ rho @ g_after_f.conj().T, [f.d, f.k, g.k], {0}
    )
    expected = interference_term(
        [f, g], Permutation((1, 2)), Permutation((2, 1)), rho
    )
    return float(np.abs(dilated - expected).max())


def dilated_interference_check(
    f: KrausChannel,
    g: KrausChannel,
    rho: np.ndarray,
    tol: float = const.TOLERANCE,
) -> bool:
    """Return whether the dilated interference matches the Kraus sum within ``tol``."""
    return dilated_interference_deviation(f, g, rho) <= tol


def fit_term(term: np.ndarray, rho: np.ndarray) -> TermFit:
    """Fit ``term`` as ``alpha * rho + beta * I`` by least squares.

    :param term: d×d interference term
    :type term: np.ndarray
    :param rho: Input that produced the term, not proportional to I
    :type rho: np.ndarray
    :return: Coefficients and Frobenius residual
    :rtype: TermFit
    """
    d = rho.shape[0]
    basis = np.stack([np.ravel(rho), np.ravel(np.eye(d))], axis=1).astype(complex)
    target = np.ravel(term)
    (alpha, beta), *_ = np.linalg.lstsq(basis, target, rcond=None)
    residual = float(np.linalg.norm(basis @ np.array([alpha, beta]) - target))
    return TermFit(complex(alpha), complex(beta), residual)
