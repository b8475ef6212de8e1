"""Scoring and search of ordering sets for switches of depolarising channels.

A set S of M orderings is scored by

    O(S) = n_id * E_id / (n_dp * E_dp)

where n_id and n_dp count the ordered pairs of S whose terms are proportional to
the identity and to the completely depolarising channel, and E_id, E_dp are the
mean coefficients of those terms. All arithmetic is exact.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Any

import numpy as np

from qswitch import constants as const
from qswitch.channels import Ensemble, holevo_quantity, partial_trace
from qswitch.errors import QSwitchValueError
from qswitch.log import get_process_pool_executor
from qswitch.objects import check_orderings
from qswitch.perm import Permutation, all_permutations, is_mutually_cyclic
from qswitch.switch.fast import classify_term, switch_output_fast

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence

log = logging.getLogger("qswitch.optimizer")

#: Subsets scored per task in a parallel exhaustive search.
CHUNK_SIZE = 2000


@dataclass(frozen=True)
class ProtocolScore:
    """Score of one set of orderings."""

    #: The orderings, in the order given.
    perm_set: tuple[Permutation, ...]

    #: Number of ordered pairs with identity-proportional terms.
    n_id: int

    #: Number of ordered pairs with depolarising terms.
    n_dp: int

    #: Mean coefficient of the identity-proportional terms, 0 if there are none.
    e_id: Fraction

    #: Mean coefficient of the depolarising terms.
    e_dp: Fraction

    #: n_id * e_id / (n_dp * e_dp), 0 if there are no identity-proportional terms.
    objective: Fraction

    def to_json(self) -> dict[str, Any]:
        """Return a JSON-ready dict, exact fractions written as strings."""
        return {
            "perms": [perm.to_json() for perm in self.perm_set],
            "n_id": self.n_id,
            "n_dp": self.n_dp,
            "e_id": str(self.e_id),
            "e_dp": str(self.e_dp),
            "objective": float(self.objective),
            "objective_exact": str(self.objective),
        }


def score(perm_set: Sequence[Permutation], d: int) -> ProtocolScore:
    """Score a set of orderings.

    :param perm_set: Distinct orderings
    :type perm_set: Sequence[Permutation]
    :param d: System dimension
    :type d: int
    :raises QSwitchValueError: If the set is empty or has repeated orderings
    :return: The score
    :rtype: ProtocolScore
    """
    perms = tuple(perm_set)
    check_orderings(list(perms), perms[0].n if perms else 0)

    identity_weights: list[Fraction] = []
    depolarising_weights: list[Fraction] = []
    for pi in perms:
        for pi_prime in perms:
            term = classify_term(pi, pi_prime)
            weights = identity_weights if term.is_identity else depolarising_weights
            weights.append(term.weight(d))

    n_id, n_dp = len(identity_weights), len(depolarising_weights)
    e_id = sum(identity_weights, Fraction(0)) / n_id if n_id else Fraction(0)
    e_dp = sum(depolarising_weights, Fraction(0)) / n_dp
    objective = n_id * e_id / (n_dp * e_dp) if n_id else Fraction(0)
    return ProtocolScore(perms, n_id, n_dp, e_id, e_dp, objective)


def is_pairwise_mutually_cyclic(perm_set: Sequence[Permutation]) -> bool:
    """Return whether every two distinct orderings of the set are rotations of each other."""
    return all(
        is_mutually_cyclic(pi, pi_prime)
        for pi, pi_prime in itertools.combinations(perm_set, 2)
    )


def _best_subsets(
    subsets: Iterable[tuple[Permutation, ...]], d: int
) -> tuple[Fraction, list[tuple[Permutation, ...]], int]:
    best = Fraction(-1)
    winners: list[tuple[Permutation, ...]] = []
    scanned = 0
    for subset in subsets:
        scanned += 1
        objective = score(subset, d).objective
        if objective > best:
            best, winners = objective, [subset]
        elif objective == best:
            winners.append(subset)

    return best, winners, scanned


def _chunks(
    subsets: Iterable[tuple[Permutation, ...]], size: int
) -> Iterator[list[tuple[Permutation, ...]]]:
    iterator = iter(subsets)
    while chunk := list(itertools.islice(iterator, size)):
        yield chunk


def _check_search(n: int, m: int, d: int, max_n: int, mode: str) -> tuple[Permutation, ...]:
    if n < 1 or d < 2:
        raise QSwitchValueError(f"Invalid search size N={n}, d={d}")

    if n > max_n:
        hint = " (use the sampled search)" if mode == "exhaustive" else ""
        raise QSwitchValueError(
            f"The {mode} search is limited to N <= {max_n}, got N = {n}{hint}"
        )

    candidates = all_permutations(n)
    if not 1 <= m <= len(candidates):
        raise QSwitchValueError(f"M must be in 1..{len(candidates)} for N = {n}, got {m}")

    return candidates


def search_best(n: int, m: int, d: int, workers: int = 1) -> list[ProtocolScore]:
    """Return every M-subset of the orderings of N channels that maximises O(S).

    :param n: Number of channels
    :type n: int
    :param m: Number of orderings per subset
    :type m: int
    :param d: System dimension
    :type d: int
    :param workers: Number of worker processes, defaults to 1
    :type workers: int, optional
    :raises QSwitchValueError: If ``n`` exceeds the exhaustive ceiling or ``m`` is
        out of range
    :return: Maximisers in lexicographic order
    :rtype: list[ProtocolScore]
    """
    candidates = _check_search(n, m, d, const.MAX_EXHAUSTIVE_N, "exhaustive")
    subsets = itertools.combinations(candidates, m)
    if workers > 1:
        with get_process_pool_executor(max_workers=workers) as executor:
            futures = [
                executor.submit(_best_subsets, chunk, d)
                for chunk in _chunks(subsets, CHUNK_SIZE)
            ]
            results = [future.result() for future in futures]

        best = max(result[0] for result in results)
        winners = [w for result in results if result[0] == best for w in result[1]]
        scanned = sum(result[2] for result in results)
    else:
        best, winners, scanned = _best_subsets(subsets, d)

    log.debug("Scanned %d subsets, %d maximisers with O(S) = %s", scanned, len(winners), best)
    return [score(subset, d) for subset in sorted(winners)]


def search_sampled(n: int, m: int, d: int, samples: int, seed: int) -> list[ProtocolScore]:
    """Return the best M-subsets among ``samples`` uniformly drawn ones.

    :param n: Number of channels
    :type n: int
    :param m: Number of orderings per subset
    :type m: int
    :param d: System dimension
    :type d: int
    :param samples: Number of subsets to draw
    :type samples: int
    :param seed: Seed of the random generator
    :type seed: int
    :raises QSwitchValueError: If ``n`` exceeds the sampled ceiling
    :return: Distinct maximisers among the drawn subsets in lexicographic order
    :rtype: list[ProtocolScore]
    """
    candidates = _check_search(n, m, d, const.MAX_SAMPLED_N, "sampled")
    if samples < 1:
        raise QSwitchValueError(f"Number of samples must be positive, got {samples}")

    rng = np.random.default_rng(seed)

    def draw() -> Iterator[tuple[Permutation, ...]]:
        for _ in range(samples):
            indices = sorted(rng.choice(len(candidates), size=m, replace=False))
            yield tuple(candidates[index] for index in indices)

    _, winners, _ = _best_subsets(draw(), d)
    return [score(subset, d) for subset in sorted(set(winners))]


def holevo_of_protocol(
    perm_set: Sequence[Permutation],
    d: int,
    ensemble: Ensemble,
    control: np.ndarray,
    discard_control: bool = False,
) -> float:
    """Return the Holevo quantity of an ensemble sent through a depolarising switch.

    :param perm_set: Distinct orderings
    :type perm_set: Sequence[Permutation]
    :param d: System dimension
    :type d: int
    :param ensemble: Input ensemble of d-dimensional states
    :type ensemble: Ensemble
    :param control: M×M control density matrix
    :type control: np.ndarray
    :param discard_control: Trace out the control before scoring, defaults to False
    :type discard_control: bool, optional
    :raises QSwitchValueError: If the ensemble dimension does not match ``d``
    :return: Holevo quantity in bits
    :rtype: float
    """
    if ensemble.d != d:
        raise QSwitchValueError(f"Ensemble has dimension {ensemble.d}, expected {d}")

    outputs = []
    for p, rho in ensemble.entries:
        output = switch_output_fast(d, perm_set, control, rho)
        state = output.assemble()
        if discard_control:
            state = partial_trace(state, [d, output.m], {0})
        outputs.append((p, state))

    return holevo_quantity(Ensemble(outputs))
