"""Graph-theoretic Hartley (alpha = 0) entanglement of random brickwork circuits.

A depth-D brickwork circuit of generic (Haar-random) two-qubit gates is
coarse-grained into a graph: one node per gate plus one input and one
output terminal per qubit, with qubit world-line segments as unit-capacity
edges.  The Hartley entropy of an output region A equals ln 2 times the
minimum edge cut separating A's output terminals from the complement's
output terminals.  Input terminals hang free (product initial state), so
a cut may exit through the bottom at no extra cost.  Within this model
the per-circuit value is deterministic, so a single evaluation reproduces
the ensemble average.

The tripartite information over contiguous quarters vanishes exactly up
to D = n/8 and saturates at -(n ln 2)/2 from D = n/4 on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .ansatz import layer_pairs
from .statevector import Region, as_region

_FREE_CAPACITY = 1 << 30  # effectively infinite for terminal attachments


@dataclass(frozen=True)
class CircuitGraph:
    """Coarse-grained brickwork circuit on a periodic qubit chain.

    Nodes 0..n-1 are input terminals, n..2n-1 output terminals, the rest
    gate nodes.  Every edge is a world-line segment of capacity one.
    """

    n: int
    depth: int
    num_nodes: int
    edges: tuple[tuple[int, int], ...]

    @property
    def num_gates(self) -> int:
        return self.num_nodes - 2 * self.n

    def output_terminal(self, qubit: int) -> int:
        return self.n + qubit


@dataclass(frozen=True)
class CutResult:
    """Minimum cut size and the Hartley entropy it implies."""

    value: int
    entropy: float


def build_circuit_graph(n: int, depth: int) -> CircuitGraph:
    """Brickwork graph with alternating pairings matching the ansatz layout."""
    if n % 2 != 0:
        raise ValueError(f"periodic brickwork graph needs even n, got {n}")
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    num = 2 * n
    last = list(range(n))  # most recent node on each world line
    edges: list[tuple[int, int]] = []
    for d in range(1, depth + 1):
        for a, b in layer_pairs(n, d):
            gate = num
            num += 1
            edges.append((last[a], gate))
            edges.append((last[b], gate))
            last[a] = gate
            last[b] = gate
    for q in range(n):
        edges.append((last[q], n + q))
    return CircuitGraph(n, depth, num, tuple(edges))


def min_cut_value(graph: CircuitGraph, region: Region | Iterable[int]) -> int:
    """Minimum number of world-line edges separating the region's output
    terminals from the remaining output terminals (max-flow dual)."""
    region = as_region(region)
    region.validate(graph.n)
    if len(region) >= graph.n:
        raise ValueError("region must be a proper subset of the qubits")
    source, sink = graph.num_nodes, graph.num_nodes + 1
    rows, cols, caps = [], [], []

    def add(u: int, v: int, cap: int) -> None:
        rows.extend((u, v))
        cols.extend((v, u))
        caps.extend((cap, cap))

    for u, v in graph.edges:
        add(u, v, 1)
    in_region = set(region.qubits)
    for q in range(graph.n):
        if q in in_region:
            add(source, graph.output_terminal(q), _FREE_CAPACITY)
        else:
            add(graph.output_terminal(q), sink, _FREE_CAPACITY)
    mat = csr_matrix(
        (np.asarray(caps, dtype=np.int32), (rows, cols)),
        shape=(graph.num_nodes + 2, graph.num_nodes + 2),
    )
    return int(maximum_flow(mat, source, sink).flow_value)


def hartley_entropy(graph: CircuitGraph, region: Region | Iterable[int]) -> CutResult:
    """S^(0) of an output region in nats: min cut times ln 2."""
    value = min_cut_value(graph, region)
    return CutResult(value, value * float(np.log(2.0)))


def hartley_tee(n: int, depth: int) -> float:
    """Tripartite information over contiguous quarters in the Hartley limit."""
    if n % 4 != 0:
        raise ValueError(f"contiguous quarter regions need n divisible by 4, got {n}")
    graph = build_circuit_graph(n, depth)
    m = n // 4
    regions = {
        "a": tuple(range(0, m)),
        "b": tuple(range(m, 2 * m)),
        "c": tuple(range(2 * m, 3 * m)),
    }
    combos = (
        (("a",), 1),
        (("b",), 1),
        (("c",), 1),
        (("a", "b"), -1),
        (("a", "c"), -1),
        (("b", "c"), -1),
        (("a", "b", "c"), 1),
    )
    total = 0
    for names, sign in combos:
        qubits: tuple[int, ...] = sum((regions[t] for t in names), ())
        total += sign * min_cut_value(graph, qubits)
    return total * float(np.log(2.0))
