"""Permutation and cycle algebra on channel labels.

Orderings of N channels are :class:`Permutation` values in one-line notation on
the labels ``1..N``. The cycle permutations that classify interference terms act
on the extended set ``{0, 1, ..., N}`` where ``0`` stands for the open ends of the
switch diagram.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

from qswitch.errors import QSwitchValueError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence


@dataclass(frozen=True, order=True)
class Permutation:
    """An ordering of N channel labels.

    ``images[a - 1]`` is π(a), the label of the channel at position ``a``.
    """

    #: Images of positions 1..N, a bijection on 1..N.
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        """Normalise the images to a tuple of ints and check the bijection."""
        images = tuple(int(image) for image in self.images)
        object.__setattr__(self, "images", images)
        if not images:
            raise QSwitchValueError("A permutation needs at least one label")

        if sorted(images) != list(range(1, len(images) + 1)):
            raise QSwitchValueError(
                f"{list(images)} is not a permutation of 1..{len(images)}"
            )

    @property
    def n(self) -> int:
        """Number of channel labels."""
        return len(self.images)

    def __call__(self, a: int) -> int:
        """Return π(a) for a position ``a`` in 1..N."""
        if not 1 <= a <= self.n:
            raise QSwitchValueError(f"Position {a} is outside 1..{self.n}")
        return self.images[a - 1]

    def __str__(self) -> str:
        """Return the one-line notation, e.g. ``(2,3,1)``."""
        return "(" + ",".join(str(image) for image in self.images) + ")"

    @classmethod
    def from_json(cls, data: Sequence[int]) -> Permutation:
        """Build a permutation from a JSON array of 1-indexed labels."""
        return cls(tuple(data))

    def to_json(self) -> list[int]:
        """Return the JSON array of 1-indexed labels."""
        return list(self.images)


@dataclass(frozen=True)
class ExtendedPermutation:
    """A bijection on ``{0, 1, ..., N}``; ``images[x]`` is the image of ``x``."""

    #: Images of 0..N.
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        """Normalise the images to a tuple of ints and check the bijection."""
        images = tuple(int(image) for image in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))) or len(images) < 2:
            raise QSwitchValueError(
                f"{list(images)} is not a permutation of 0..{len(images) - 1}"
            )

    @property
    def n(self) -> int:
        """Largest element of the extended set."""
        return len(self.images) - 1

    def __call__(self, x: int) -> int:
        """Return the image of ``x``."""
        if not 0 <= x <= self.n:
            raise QSwitchValueError(f"Element {x} is outside 0..{self.n}")
        return self.images[x]

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> ExtendedPermutation:
        """Build the permutation of ``{0..n}`` that applies the given disjoint cycles.

        Elements not mentioned in any cycle are fixed points.

        :param cycles: Disjoint cycles, each mapping an element to its successor
        :type cycles: Iterable[Sequence[int]]
        :param n: Largest element of the extended set
        :type n: int
        :return: The extended permutation
        :rtype: ExtendedPermutation
        """
        images = list(range(n + 1))
        for cycle in cycles:
            for index, element in enumerate(cycle):
                images[element] = cycle[(index + 1) % len(cycle)]

        return cls(tuple(images))


@dataclass(frozen=True)
class CycleDecomposition:
    """Canonical cycle decomposition of an :class:`ExtendedPermutation`.

    Each cycle starts from its smallest element, cycles are sorted by their first
    element, and fixed points appear as singleton cycles.
    """

    #: Disjoint cycles covering 0..N.
    cycles: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        """Largest element of the extended set."""
        return sum(len(cycle) for cycle in self.cycles) - 1

    @property
    def cycle_count(self) -> int:
        """Number of cycles, fixed points included."""
        return len(self.cycles)

    def cycle_of(self, x: int) -> tuple[int, ...]:
        """Return the cycle containing ``x``."""
        if not 0 <= x <= self.n:
            raise QSwitchValueError(f"Element {x} is outside 0..{self.n}")

        for cycle in self.cycles:
            if x in cycle:
                return cycle

        raise QSwitchValueError(f"Element {x} is missing from {self.cycles}")

    def to_permutation(self) -> ExtendedPermutation:
        """Rebuild the extended permutation from the cycles."""
        return ExtendedPermutation.from_cycles(self.cycles, self.n)

    def __str__(self) -> str:
        """Return the cycle notation, e.g. ``(0 3 1)(2)``."""
        return "".join(
            "(" + " ".join(str(element) for element in cycle) + ")"
            for cycle in self.cycles
        )


def identity(n: int) -> Permutation:
    """Return the identity ordering (1, 2, ..., n)."""
    return Permutation(tuple(range(1, n + 1)))


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    """Return every ordering of ``n`` channels in lexicographic order."""
    if n < 1:
        raise QSwitchValueError(f"Number of channels must be positive, got {n}")
    return tuple(Permutation(p) for p in itertools.permutations(range(1, n + 1)))


def cyclic_permutations(n: int) -> tuple[Permutation, ...]:
    """Return the ``n`` rotations of (1, ..., n), starting with the identity."""
    if n < 1:
        raise QSwitchValueError(f"Number of channels must be positive, got {n}")
    return tuple(
        Permutation(tuple((a + shift) % n + 1 for a in range(n))) for shift in range(n)
    )


def _check_same_size(p: Permutation, q: Permutation) -> None:
    if p.n != q.n:
        raise QSwitchValueError(f"Permutations {p} and {q} act on different sizes")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p ∘ q``, the permutation ``a ↦ p(q(a))``.

    :param p: Permutation applied second
    :type p: Permutation
    :param q: Permutation applied first
    :type q: Permutation
    :raises QSwitchValueError: If the permutations have different sizes
    :return: The composition
    :rtype: Permutation
    """
    _check_same_size(p, q)
    return Permutation(tuple(p.images[image - 1] for image in q.images))


def inverse(p: Permutation) -> Permutation:
    """Return the inverse permutation."""
    images = [0] * p.n
    for a, image in enumerate(p.images, start=1):
        images[image - 1] = a

    return Permutation(tuple(images))


def build_c_pair(pi: Permutation, pi_prime: Permutation) -> ExtendedPermutation:
    """Build the cycle permutation C_{ππ′} on ``{0..N}``.

    The result applies first the (N+1)-cycle ``0 → π(1) → ... → π(N) → 0`` and then
    the (N+1)-cycle ``0 → π′(N) → ... → π′(1) → 0``. On positions where the
    function form is defined this is
    ``C_{ππ′}(π(a)) = π′(π′⁻¹(π(a+1)) − 1)``; composing whole cycles also covers
    the open ends of the diagram (``a = N`` and images hitting ``0``).

    :param pi: Ordering on the ket side of the term
    :type pi: Permutation
    :param pi_prime: Ordering on the bra side of the term
    :type pi_prime: Permutation
    :raises QSwitchValueError: If the permutations have different sizes
    :return: C_{ππ′}
    :rtype: ExtendedPermutation
    """
    _check_same_size(pi, pi_prime)
    n = pi.n

    forward = [0] * (n + 1)
    forward[0] = pi(1)
    for a in range(1, n):
        forward[pi(a)] = pi(a + 1)
    forward[pi(n)] = 0

    backward = [0] * (n + 1)
    backward[0] = pi_prime(n)
    for a in range(2, n + 1):
        backward[pi_prime(a)] = pi_prime(a - 1)
    backward[pi_prime(1)] = 0

    return ExtendedPermutation(tuple(backward[forward[x]] for x in range(n + 1)))


def c_pair_function_form(pi: Permutation, pi_prime: Permutation, a: int) -> int | None:
    """Evaluate ``π′(π′⁻¹(π(a+1)) − 1)``, or ``None`` where it leaves 1..N."""
    _check_same_size(pi, pi_prime)
    if not 1 <= a < pi.n:
        return None

    position = inverse(pi_prime)(pi(a + 1)) - 1
    return pi_prime(position) if position >= 1 else None


def cycle_decomposition(e: ExtendedPermutation) -> CycleDecomposition:
    """Return the canonical cycle decomposition of ``e``."""
    seen: set[int] = set()
    cycles = []
    for start in range(e.n + 1):
        if start in seen:
            continue

        cycle = [start]
        seen.add(start)
        x = e(start)
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = e(x)

        cycles.append(tuple(cycle))

    return CycleDecomposition(tuple(cycles))


def same_cycle(c: CycleDecomposition, a: int, b: int) -> bool:
    """Return whether ``a`` and ``b`` belong to the same cycle of ``c``.

    :raises QSwitchValueError: If either element is outside ``0..N``
    """
    if not 0 <= b <= c.n:
        raise QSwitchValueError(f"Element {b} is outside 0..{c.n}")
    return b in c.cycle_of(a)


def is_mutually_cyclic(pi: Permutation, pi_prime: Permutation) -> bool:
    """Return whether ``pi_prime`` is a cyclic shift of the ordering ``pi``.

    The orderings are mutually cyclic when π′(a) = π(a + s mod N) for a shift
    ``s`` in 1..N−1, i.e. π⁻¹∘π′ is a non-trivial power of ``a ↦ a + 1``. For
    ``N = 1`` the single ordering is mutually cyclic with itself. These are
    exactly the pairs whose interference term is proportional to the identity
    channel with the largest coefficient 1/d².

    :param pi: First ordering
    :type pi: Permutation
    :param pi_prime: Second ordering
    :type pi_prime: Permutation
    :return: True if the orderings are rotations of each other
    :rtype: bool
    """
    ratio = compose(inverse(pi), pi_prime)
    n = ratio.n
    if n == 1:
        return True

    shift = ratio(1) - 1
    if shift == 0:
        return False

    return all(ratio(a) == (a - 1 + shift) % n + 1 for a in range(1, n + 1))


def is_single_cycle_ratio(pi: Permutation, pi_prime: Permutation) -> bool:
    """Return whether π′∘π⁻¹ is a single cycle of length N.

    Agrees with :func:`is_mutually_cyclic` for N ≤ 3 and is strictly weaker from
    N = 4 on, e.g. ``(1,2,3,4)`` and ``(2,4,1,3)``.
    """
    ratio = compose(pi_prime, inverse(pi))
    length, a = 1, ratio(1)
    while a != 1:
        length += 1
        a = ratio(a)

    return length == ratio.n


def is_cds_sortable(pi: Permutation, pi_prime: Permutation) -> bool:
    """Return whether 0 and π′(N) share a cycle of C_{ππ′}.

    Because C_{ππ′}(π(N)) = π′(N), this selects the same pairs as the
    same-cycle test on 0 and π(N).
    """
    decomposition = cycle_decomposition(build_c_pair(pi, pi_prime))
    return same_cycle(decomposition, 0, pi_prime(pi_prime.n))
