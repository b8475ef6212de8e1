"""Wiring diagrams of interference terms of completely depolarising channels.

A completely depolarising channel separates into a top half (its output wire)
and a bottom half (its input wire). In the diagram of N_{ππ′} the left column
holds the channels in the order π, the right column in the order π′, slot 1 at
the top. Each channel's halves on the left are joined to the same halves on the
right by caps, and adjacent slots of a column are joined by vertical wires. The
four open ends are the output (top of slot 1) and the input (bottom of slot N)
of each column.

Every closed loop contributes a factor d. Closing the open ends pairwise gives a
diagram whose loop count is the number of cycles of C_{ππ′}.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import networkx as nx

from qswitch.errors import QSwitchValueError
from qswitch.perm import Permutation, inverse

log = logging.getLogger("qswitch")


class Side(str, Enum):
    """Column of the diagram."""

    LEFT = "L"
    RIGHT = "R"


class Port(str, Enum):
    """Half of a separated channel box."""

    TOP = "top"
    BOTTOM = "bottom"


class Endpoint(NamedTuple):
    """A wire endpoint, e.g. ``Endpoint(Side.LEFT, 1, Port.TOP)``."""

    side: Side
    slot: int
    port: Port

    def __str__(self) -> str:
        """Return a compact name such as ``L1top``."""
        return f"{self.side.value}{self.slot}{self.port.value}"


@dataclass
class WiringDiagram:
    """Endpoint-matching graph of one interference term."""

    #: Number of channels.
    n: int

    #: Multigraph over :class:`Endpoint` nodes; every edge has a ``kind`` attribute.
    graph: nx.MultiGraph

    #: Open endpoints; empty once the diagram is closed.
    open_endpoints: tuple[Endpoint, ...]

    @property
    def is_closed(self) -> bool:
        """Whether the diagram has no open endpoints."""
        return not self.open_endpoints


def _open_ends(n: int) -> tuple[Endpoint, Endpoint, Endpoint, Endpoint]:
    return (
        Endpoint(Side.LEFT, 1, Port.TOP),
        Endpoint(Side.RIGHT, 1, Port.TOP),
        Endpoint(Side.LEFT, n, Port.BOTTOM),
        Endpoint(Side.RIGHT, n, Port.BOTTOM),
    )


def build_diagram(pi: Permutation, pi_prime: Permutation) -> WiringDiagram:
    """Build the unmodified diagram of N_{ππ′}.

    :param pi: Ordering of the left column
    :type pi: Permutation
    :param pi_prime: Ordering of the right column
    :type pi_prime: Permutation
    :raises QSwitchValueError: If the orderings have different sizes
    :return: Diagram with four open endpoints
    :rtype: WiringDiagram
    """
    if pi.n != pi_prime.n:
        raise QSwitchValueError(f"Permutations {pi} and {pi_prime} act on different sizes")

    n = pi.n
    graph = nx.MultiGraph()
    for side in Side:
        for slot in range(1, n + 1):
            for port in Port:
                graph.add_node(Endpoint(side, slot, port))

    left, right = inverse(pi), inverse(pi_prime)
    for label in range(1, n + 1):
        for port in Port:
            graph.add_edge(
                Endpoint(Side.LEFT, left(label), port),
                Endpoint(Side.RIGHT, right(label), port),
                kind="cap",
                label=label,
            )

    for side in Side:
        for slot in range(1, n):
            graph.add_edge(
                Endpoint(side, slot, Port.BOTTOM),
                Endpoint(side, slot + 1, Port.TOP),
                kind="wire",
            )

    return WiringDiagram(n, graph, _open_ends(n))


def modify_diagram(dg: WiringDiagram) -> WiringDiagram:
    """Close a diagram by joining top-left to top-right and bottom-left to bottom-right.

    :raises QSwitchValueError: If the diagram is already closed
    """
    if dg.is_closed:
        raise QSwitchValueError("Diagram is already closed")

    top_left, top_right, bottom_left, bottom_right = dg.open_endpoints
    graph = dg.graph.copy()
    graph.add_edge(top_left, top_right, kind="leg")
    graph.add_edge(bottom_left, bottom_right, kind="leg")
    return WiringDiagram(dg.n, graph, ())


def count_loops(dg: WiringDiagram) -> int:
    """Return the number of connected components without an open endpoint."""
    open_endpoints = set(dg.open_endpoints)
    return sum(
        1
        for component in nx.connected_components(dg.graph)
        if open_endpoints.isdisjoint(component)
    )


def loop_delta(dg: WiringDiagram) -> int:
    """Return how many loops closing the diagram adds."""
    return count_loops(modify_diagram(dg)) - count_loops(dg)


def is_information_transmitting(dg: WiringDiagram) -> bool:
    """Return whether the top-left and bottom-left open endpoints are connected.

    :raises QSwitchValueError: If the diagram is closed
    """
    if dg.is_closed:
        raise QSwitchValueError("A closed diagram has no input or output")

    top_left, _, bottom_left, _ = dg.open_endpoints
    return nx.has_path(dg.graph, top_left, bottom_left)


def to_dot(dg: WiringDiagram) -> str:
    """Return the diagram in GraphViz ``dot`` syntax."""
    lines = ["graph wiring {"]
    open_endpoints = set(dg.open_endpoints)
    for node in sorted(dg.graph.nodes, key=lambda e: (e.side.value, e.slot, e.port.value)):
        shape = "doublecircle" if node in open_endpoints else "point"
        lines.append(f'  "{node}" [shape={shape}];')

    for u, v, kind in dg.graph.edges(data="kind"):
        lines.append(f'  "{u}" -- "{v}" [label={kind}];')

    lines.append("}")
    return "\n".join(lines) + "\n"
