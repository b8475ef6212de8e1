"""Unit tests for qswitch.perm."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qswitch.errors import QSwitchValueError
from qswitch.perm import (
    CycleDecomposition,
    ExtendedPermutation,
    Permutation,
    all_permutations,
    build_c_pair,
    c_pair_function_form,
    compose,
    cycle_decomposition,
    cyclic_permutations,
    identity,
    inverse,
    is_cds_sortable,
    is_mutually_cyclic,
    is_single_cycle_ratio,
    same_cycle,
)


def _perm(n: int) -> st.SearchStrategy[Permutation]:
    return st.permutations(list(range(1, n + 1))).map(lambda p: Permutation(tuple(p)))


sizes = st.integers(min_value=1, max_value=8)
perms = sizes.flatmap(_perm)
pairs = sizes.flatmap(lambda n: st.tuples(_perm(n), _perm(n)))
triples = sizes.flatmap(lambda n: st.tuples(_perm(n), _perm(n), _perm(n)))


# ---------------------------------------------------------------------------
# Permutation
# ---------------------------------------------------------------------------


def test_permutation_call_is_one_indexed() -> None:
    p = Permutation((2, 3, 1))
    assert [p(a) for a in (1, 2, 3)] == [2, 3, 1]
    assert p.n == 3
    assert str(p) == "(2,3,1)"


@pytest.mark.parametrize("images", [(), (1, 1), (0, 1), (1, 3), (2, 3)])
def test_permutation_rejects_non_bijections(images: tuple[int, ...]) -> None:
    with pytest.raises(QSwitchValueError):
        Permutation(images)


def test_permutation_call_out_of_range() -> None:
    with pytest.raises(QSwitchValueError, match="outside"):
        Permutation((1, 2))(3)


def test_permutation_json() -> None:
    p = Permutation.from_json([3, 1, 2])
    assert p == Permutation((3, 1, 2))
    assert p.to_json() == [3, 1, 2]


def test_identity_and_enumerations() -> None:
    assert identity(3) == Permutation((1, 2, 3))
    assert len(all_permutations(4)) == 24
    assert list(all_permutations(3)) == sorted(all_permutations(3))
    assert cyclic_permutations(3) == (
        Permutation((1, 2, 3)),
        Permutation((2, 3, 1)),
        Permutation((3, 1, 2)),
    )


@pytest.mark.parametrize("function", [all_permutations, cyclic_permutations])
def test_enumerations_reject_empty_size(function: object) -> None:
    with pytest.raises(QSwitchValueError):
        function(0)  # type: ignore[operator]


# ---------------------------------------------------------------------------
# Group operations
# ---------------------------------------------------------------------------


def test_compose_applies_right_first() -> None:
    p = Permutation((2, 3, 1))
    q = Permutation((2, 1, 3))
    assert compose(p, q) == Permutation((3, 2, 1))
    assert compose(p, identity(3)) == p


def test_compose_rejects_size_mismatch() -> None:
    with pytest.raises(QSwitchValueError, match="different sizes"):
        compose(identity(2), identity(3))


@given(triples)
def test_compose_is_associative(
    triple: tuple[Permutation, Permutation, Permutation],
) -> None:
    p, q, r = triple
    assert compose(compose(p, q), r) == compose(p, compose(q, r))


@given(perms)
def test_inverse_is_two_sided(p: Permutation) -> None:
    assert compose(p, inverse(p)) == identity(p.n)
    assert compose(inverse(p), p) == identity(p.n)


# ---------------------------------------------------------------------------
# C_{ππ′} and cycle decompositions
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("pi", "pi_prime", "cycles"),
    [
        ((1, 2), (2, 1), ((0, 2, 1),)),
        ((1, 2, 3), (2, 3, 1), ((0, 3, 1), (2,))),
        ((1, 2, 3), (2, 1, 3), ((0, 2, 1), (3,))),
        ((1, 2, 3), (1, 3, 2), ((0,), (1, 3, 2))),
        ((1, 2, 3), (3, 2, 1), ((0, 2), (1, 3))),
    ],
)
def test_build_c_pair_examples(
    pi: tuple[int, ...], pi_prime: tuple[int, ...], cycles: tuple[tuple[int, ...], ...]
) -> None:
    c = build_c_pair(Permutation(pi), Permutation(pi_prime))
    assert cycle_decomposition(c) == CycleDecomposition(cycles)


@given(perms)
def test_build_c_pair_of_equal_orderings_is_identity(p: Permutation) -> None:
    c = build_c_pair(p, p)
    assert c == ExtendedPermutation(tuple(range(p.n + 1)))
    assert cycle_decomposition(c).cycle_count == p.n + 1


@given(pairs)
def test_build_c_pair_agrees_with_function_form(
    pair: tuple[Permutation, Permutation],
) -> None:
    pi, pi_prime = pair
    c = build_c_pair(pi, pi_prime)
    for a in range(1, pi.n):
        value = c_pair_function_form(pi, pi_prime, a)
        if value is not None:
            assert c(pi(a)) == value


@given(pairs)
def test_c_pair_maps_last_of_pi_to_last_of_pi_prime(
    pair: tuple[Permutation, Permutation],
) -> None:
    pi, pi_prime = pair
    assert build_c_pair(pi, pi_prime)(pi(pi.n)) == pi_prime(pi_prime.n)


@given(pairs)
def test_cycle_decomposition_round_trips(pair: tuple[Permutation, Permutation]) -> None:
    c = build_c_pair(*pair)
    decomposition = cycle_decomposition(c)
    assert decomposition.to_permutation() == c
    assert all(cycle[0] == min(cycle) for cycle in decomposition.cycles)
    assert [cycle[0] for cycle in decomposition.cycles] == sorted(
        cycle[0] for cycle in decomposition.cycles
    )


def test_extended_permutation_from_cycles() -> None:
    e = ExtendedPermutation.from_cycles([(0, 3, 1)], 3)
    assert e.images == (3, 0, 2, 1)
    assert str(cycle_decomposition(e)) == "(0 3 1)(2)"


def test_extended_permutation_rejects_non_bijection() -> None:
    with pytest.raises(QSwitchValueError):
        ExtendedPermutation((0, 0, 1))


def test_same_cycle() -> None:
    decomposition = CycleDecomposition(((0, 3, 1), (2,)))
    assert same_cycle(decomposition, 0, 1)
    assert not same_cycle(decomposition, 0, 2)
    with pytest.raises(QSwitchValueError, match="outside"):
        same_cycle(decomposition, 0, 4)
    with pytest.raises(QSwitchValueError, match="outside"):
        same_cycle(decomposition, -1, 0)


# ---------------------------------------------------------------------------
# Relations between orderings
# ---------------------------------------------------------------------------


def test_is_mutually_cyclic_examples() -> None:
    assert is_mutually_cyclic(Permutation((1, 2)), Permutation((2, 1)))
    assert is_mutually_cyclic(Permutation((1, 2, 3)), Permutation((3, 1, 2)))
    assert not is_mutually_cyclic(Permutation((1, 2, 3)), Permutation((2, 1, 3)))
    assert not is_mutually_cyclic(Permutation((1, 2, 3)), Permutation((1, 2, 3)))
    assert is_mutually_cyclic(Permutation((1,)), Permutation((1,)))


def test_rotation_and_single_cycle_readings_split_from_four_channels() -> None:
    pi = identity(4)
    witness = Permutation((2, 4, 1, 3))
    assert is_single_cycle_ratio(pi, witness)
    assert not is_mutually_cyclic(pi, witness)
    assert cycle_decomposition(build_c_pair(pi, witness)).cycle_count == 1

    half_turn = Permutation((3, 4, 1, 2))
    assert is_mutually_cyclic(pi, half_turn)
    assert not is_single_cycle_ratio(pi, half_turn)


@pytest.mark.parametrize("n", [2, 3])
def test_rotation_and_single_cycle_readings_agree_up_to_three(n: int) -> None:
    for pi, pi_prime in itertools.product(all_permutations(n), repeat=2):
        assert is_mutually_cyclic(pi, pi_prime) == is_single_cycle_ratio(pi, pi_prime)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_mutually_cyclic_pairs_have_n_minus_one_cycles(n: int) -> None:
    for pi, pi_prime in itertools.product(all_permutations(n), repeat=2):
        if is_mutually_cyclic(pi, pi_prime):
            decomposition = cycle_decomposition(build_c_pair(pi, pi_prime))
            assert decomposition.cycle_count == n - 1
            assert same_cycle(decomposition, 0, pi(n))


@given(pairs)
def test_cds_sortable_matches_pi_condition(pair: tuple[Permutation, Permutation]) -> None:
    pi, pi_prime = pair
    decomposition = cycle_decomposition(build_c_pair(pi, pi_prime))
    assert is_cds_sortable(pi, pi_prime) == same_cycle(decomposition, 0, pi(pi.n))


def test_c_pair_function_form_out_of_range() -> None:
    pi, pi_prime = Permutation((1, 2)), Permutation((1, 2))
    assert c_pair_function_form(pi, pi_prime, 2) is None
    assert c_pair_function_form(pi, pi_prime, 1) == 1
    assert c_pair_function_form(Permutation((1, 2)), Permutation((2, 1)), 1) is None
