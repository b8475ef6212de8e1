"""Cross-checks between the closed-form, Kraus-sum, diagram and dilation evaluators."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from qswitch import constants as const
from qswitch.channels import (
    Ensemble,
    make_cdpc,
    random_channel,
    random_density_matrix,
)
from qswitch.diagram import (
    build_diagram,
    count_loops,
    is_information_transmitting,
    modify_diagram,
)
from qswitch.log import get_process_pool_executor
from qswitch.objects import SwitchSpec, fourier_control
from qswitch.optimizer import (
    holevo_of_protocol,
    is_pairwise_mutually_cyclic,
    score,
    search_best,
)
from qswitch.perm import Permutation, all_permutations, cyclic_permutations
from qswitch.switch.bruteforce import (
    chain_operators,
    contract_chains,
    dilated_interference_deviation,
    fit_term,
    interference_term,
    switch_output,
)
from qswitch.switch.fast import classify_term, switch_output_fast, term_channel
from qswitch.utils import basis_ensemble, named_state

log = logging.getLogger("qswitch.verify")


@dataclass
class CheckResult:
    """Outcome of one verification check."""

    #: Short check name.
    name: str

    #: Whether the check passed.
    passed: bool

    #: Largest numerical error observed, 0 for purely combinatorial checks.
    max_error: float

    #: Human readable summary.
    detail: str

    @property
    def status(self) -> str:
        """``OK`` or ``FAILED``."""
        return const.STATUS_OK if self.passed else const.STATUS_FAILED


def check_two_channel_closed_form(tolerance: float = const.EXACT_TOLERANCE) -> CheckResult:
    """Compare the Kraus-sum switch of two depolarising channels to I/(2d) and ρ/(2d²)."""
    error = 0.0
    for d in (2, 3):
        rho = named_state("zero", d)
        spec = SwitchSpec(
            d=d,
            channels=[make_cdpc(d), make_cdpc(d)],
            perms=[Permutation((1, 2)), Permutation((2, 1))],
            control=fourier_control(2),
        )
        out = switch_output(spec, rho)
        diagonal = np.eye(d) / (2 * d)
        off_diagonal = rho / (2 * d**2)
        for p, q in itertools.product(range(2), repeat=2):
            expected = diagonal if p == q else off_diagonal
            error = max(error, float(np.abs(out.block(p, q) - expected).max()))

    return CheckResult(
        "two-channel closed form",
        error <= tolerance,
        error,
        "d in {2, 3}, Fourier control, rho = |0><0|",
    )


def _oracle_case(n: int, d: int, n_states: int, seed: int) -> tuple[float, int]:
    rng = np.random.default_rng([seed, n, d])
    channels = [make_cdpc(d)] * n
    perms = all_permutations(n)
    chains = {perm: chain_operators(channels, perm) for perm in perms}
    states = [random_density_matrix(d, rng) for _ in range(n_states)]
    error = 0.0
    for pi, pi_prime in itertools.product(perms, repeat=2):
        for rho in states:
            fast = term_channel(pi, pi_prime, d, rho)
            brute = contract_chains(chains[pi], chains[pi_prime], rho)
            error = max(error, float(np.abs(fast - brute).max()))

    log.debug("Oracle equivalence N=%d d=%d: max error %.3g", n, d, error)
    return error, len(perms) ** 2


def check_oracle_equivalence(
    ns: tuple[int, ...],
    ds: tuple[int, ...],
    n_states: int = const.DEFAULT_RANDOM_STATES,
    tolerance: float = const.TOLERANCE,
    seed: int = const.DEFAULT_SEED,
    workers: int = 1,
) -> CheckResult:
    """Compare closed-form and Kraus-sum terms for every ordered pair of orderings.

    :param ns: Numbers of channels
    :type ns: tuple[int, ...]
    :param ds: System dimensions
    :type ds: tuple[int, ...]
    :param n_states: Random states per pair, defaults to DEFAULT_RANDOM_STATES
    :type n_states: int, optional
    :param tolerance: Max accepted elementwise error, defaults to TOLERANCE
    :type tolerance: float, optional
    :param seed: Seed of the random states, defaults to DEFAULT_SEED
    :type seed: int, optional
    :param workers: Number of worker processes, defaults to 1
    :type workers: int, optional
    :return: Check result
    :rtype: CheckResult
    """
    cases = list(itertools.product(ns, ds))
    if workers > 1:
        with get_process_pool_executor(max_workers=workers) as executor:
            futures = [
                executor.submit(_oracle_case, n, d, n_states, seed) for n, d in cases
            ]
            results = [future.result() for future in futures]
    else:
        results = [_oracle_case(n, d, n_states, seed) for n, d in cases]

    error = max(result[0] for result in results)
    pairs = sum(result[1] for result in results)
    return CheckResult(
        "oracle equivalence",
        error <= tolerance,
        error,
        f"{pairs} pairs, N in {set(ns)}, d in {set(ds)}, {n_states} states each",
    )


def check_classification_fit(
    ns: tuple[int, ...],
    d: int = 2,
    seed: int = const.DEFAULT_SEED,
) -> CheckResult:
    """Fit every Kraus-sum term against {ρ, I} and compare with the cycle conditions.

    Both same-cycle conditions, on 0 and π(N) and on 0 and π′(N), are compared
    with the fit and their agreement counts reported.
    """
    rng = np.random.default_rng([seed, d])
    total = pi_matches = pi_prime_matches = 0
    residual = 0.0
    for n in ns:
        channels = [make_cdpc(d)] * n
        perms = all_permutations(n)
        chains = {perm: chain_operators(channels, perm) for perm in perms}
        rho = random_density_matrix(d, rng)
        for pi, pi_prime in itertools.product(perms, repeat=2):
            fit = fit_term(contract_chains(chains[pi], chains[pi_prime], rho), rho)
            residual = max(residual, fit.residual)
            fitted_identity = abs(fit.alpha) > const.FIT_RESIDUAL
            term = classify_term(pi, pi_prime)
            total += 1
            pi_matches += fitted_identity == term.is_identity
            pi_prime_matches += fitted_identity == term.cds_sortable

    return CheckResult(
        "classification fit",
        residual < const.FIT_RESIDUAL and pi_matches == total,
        residual,
        f"same cycle (0, pi(N)) matched {pi_matches}/{total}; "
        f"same cycle (0, pi'(N)) matched {pi_prime_matches}/{total}",
    )


def check_loop_counts(max_n: int) -> CheckResult:
    """Compare diagram loop counts and connectivity with the cycle decomposition."""
    total = mismatches = 0
    for n in range(1, max_n + 1):
        for pi, pi_prime in itertools.product(all_permutations(n), repeat=2):
            term = classify_term(pi, pi_prime)
            diagram = build_diagram(pi, pi_prime)
            open_loops = count_loops(diagram)
            closed_loops = count_loops(modify_diagram(diagram))
            expected_delta = 1 if term.is_identity else 2
            total += 1
            if (
                closed_loops != term.cycle_count
                or closed_loops - open_loops != expected_delta
                or is_information_transmitting(diagram) != term.is_identity
            ):
                mismatches += 1
                log.debug("Diagram mismatch for %s, %s", pi, pi_prime)

    return CheckResult(
        "diagram loop counts",
        mismatches == 0,
        0.0,
        f"{total - mismatches}/{total} pairs agree, N <= {max_n}",
    )


def check_cyclic_closed_form(
    ns: tuple[int, ...],
    brute_ns: tuple[int, ...],
    ds: tuple[int, ...],
    tolerance: float = const.TOLERANCE,
    seed: int = const.DEFAULT_SEED,
) -> CheckResult:
    """Compare the switch over the N rotations with I/(Nd) and ρ/(Nd²)."""
    rng = np.random.default_rng([seed, 5])
    formula_error = brute_error = 0.0
    for n, d in itertools.product(ns, ds):
        perms = list(cyclic_permutations(n))
        control = fourier_control(n)
        rho = random_density_matrix(d, rng)
        fast = switch_output_fast(d, perms, control, rho)
        for p, q in itertools.product(range(n), repeat=2):
            expected = np.eye(d) / (n * d) if p == q else rho / (n * d**2)
            formula_error = max(
                formula_error, float(np.abs(fast.block(p, q) - expected).max())
            )

        if n in brute_ns:
            spec = SwitchSpec(d, [make_cdpc(d)] * n, perms, control)
            brute_error = max(brute_error, fast.max_deviation(switch_output(spec, rho)))

    exact = min(tolerance, const.EXACT_TOLERANCE)
    return CheckResult(
        "cyclic closed form",
        formula_error <= exact and brute_error <= tolerance,
        max(formula_error, brute_error),
        f"formula error {formula_error:.3g}, Kraus-sum error {brute_error:.3g}",
    )


def check_cyclic_optimality(
    cases: tuple[tuple[int, int], ...], ds: tuple[int, ...]
) -> CheckResult:
    """Check that pairwise rotated sets, and only they, reach O(S) = (M−1)/d²."""
    failures = []
    scanned = 0
    for (n, m), d in itertools.product(cases, ds):
        target = Fraction(m - 1, d**2)
        maximisers = search_best(n, m, d)
        if any(
            best.objective != target or not is_pairwise_mutually_cyclic(best.perm_set)
            for best in maximisers
        ):
            failures.append(f"N={n} M={m} d={d}: maximiser off target")

        for subset in itertools.combinations(all_permutations(n), m):
            scanned += 1
            objective = score(subset, d).objective
            cyclic = is_pairwise_mutually_cyclic(subset)
            if (cyclic and objective != target) or (not cyclic and objective >= target):
                failures.append(f"N={n} M={m} d={d}: {[str(p) for p in subset]}")
                break

    return CheckResult(
        "cyclic optimality",
        not failures,
        0.0,
        f"{scanned} subsets scanned" + (f"; {'; '.join(failures)}" if failures else ""),
    )


def check_dilation(
    n_pairs: int = const.DEFAULT_RANDOM_CHANNEL_PAIRS,
    tolerance: float = const.TOLERANCE,
    seed: int = const.DEFAULT_SEED,
) -> CheckResult:
    """Compare the dilated two-order interference with the Kraus sum."""
    rng = np.random.default_rng([seed, 7])
    error = 0.0
    for d in (2, 3):
        cdpc = make_cdpc(d)
        rho = random_density_matrix(d, rng)
        error = max(error, dilated_interference_deviation(cdpc, cdpc, rho))
        off_diagonal = interference_term(
            [cdpc, cdpc], Permutation((1, 2)), Permutation((2, 1)), rho
        )
        error = max(error, float(np.abs(off_diagonal - rho / d**2).max()))

    for _ in range(n_pairs):
        d = int(rng.integers(2, 4))
        f = random_channel(d, int(rng.integers(1, 5)), rng)
        g = random_channel(d, int(rng.integers(1, 5)), rng)
        rho = random_density_matrix(d, rng)
        error = max(error, dilated_interference_deviation(f, g, rho))

    return CheckResult(
        "dilation consistency",
        error <= tolerance,
        error,
        f"depolarising pairs d in {{2, 3}} and {n_pairs} random channel pairs",
    )


def check_capacity_activation(
    ns: tuple[int, ...], tolerance: float = const.TOLERANCE
) -> CheckResult:
    """Check that the control carries information that the system alone does not."""
    d = 2
    ensemble: Ensemble = basis_ensemble(d)
    passed = True
    error = 0.0
    details = []
    for n in ns:
        perms = cyclic_permutations(n)
        control = fourier_control(n)
        kept = holevo_of_protocol(perms, d, ensemble, control)
        discarded = holevo_of_protocol(perms, d, ensemble, control, discard_control=True)
        passed = passed and kept > tolerance and abs(discarded) <= tolerance
        error = max(error, abs(discarded))
        details.append(f"N={n}: {kept:.12g} bits kept, {discarded:.3g} discarded")

    return CheckResult("capacity activation", passed, error, "; ".join(details))


def run_suite(
    quick: bool = False,
    tolerance: float = const.TOLERANCE,
    seed: int = const.DEFAULT_SEED,
    workers: int = 1,
) -> list[CheckResult]:
    """Run every check.

    :param quick: Restrict every check to N <= 3, defaults to False
    :type quick: bool, optional
    :param tolerance: Max accepted numerical error, defaults to TOLERANCE
    :type tolerance: float, optional
    :param seed: Seed of the random states and channels, defaults to DEFAULT_SEED
    :type seed: int, optional
    :param workers: Number of worker processes, defaults to 1
    :type workers: int, optional
    :return: One result per check
    :rtype: list[CheckResult]
    """
    if quick:
        ns, loop_n, cyclic_ns = (2, 3), 3, (2, 3)
        cases: tuple[tuple[int, int], ...] = ((2, 2), (3, 2), (3, 3))
    else:
        ns, loop_n, cyclic_ns = (2, 3, 4), 5, (2, 3, 4, 5)
        cases = ((2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4))

    exact = min(tolerance, const.EXACT_TOLERANCE)
    checks = [
        lambda: check_two_channel_closed_form(exact),
        lambda: check_oracle_equivalence(
            ns, (2, 3), tolerance=tolerance, seed=seed, workers=workers
        ),
        lambda: check_classification_fit(ns, seed=seed),
        lambda: check_loop_counts(loop_n),
        lambda: check_cyclic_closed_form(
            cyclic_ns, ns, (2, 3), tolerance=tolerance, seed=seed
        ),
        lambda: check_cyclic_optimality(cases, (2, 3)),
        lambda: check_dilation(tolerance=tolerance, seed=seed),
        lambda: check_capacity_activation((2, 3), tolerance=tolerance),
    ]

    results = []
    for check in checks:
        result = check()
        log.info("%s: %s (%s)", result.name, result.status, result.detail)
        results.append(result)

    return results
