from itertools import combinations

import numpy as np
import pytest

from teeq.mincut import (
    CircuitGraph,
    build_circuit_graph,
    hartley_entropy,
    hartley_tee,
    min_cut_value,
)

LN2 = np.log(2.0)


def brute_force_min_cut(graph: CircuitGraph, region) -> int:
    """Smallest edge subset whose removal disconnects the region's output
    terminals from the other output terminals (exhaustive search)."""
    region = set(region)
    sources = {graph.output_terminal(q) for q in region}
    sinks = {graph.output_terminal(q) for q in range(graph.n) if q not in region}

    def disconnected(removed):
        adj = {u: set() for u in range(graph.num_nodes)}
        for idx, (u, v) in enumerate(graph.edges):
            if idx in removed:
                continue
            adj[u].add(v)
            adj[v].add(u)
        seen = set(sources)
        stack = list(sources)
        while stack:
            u = stack.pop()
            if u in sinks:
                return False
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return True

    for k in range(len(graph.edges) + 1):
        for removed in combinations(range(len(graph.edges)), k):
            if disconnected(set(removed)):
                return k
    raise AssertionError("unreachable")


def test_depth_zero_graph_is_disjoint_world_lines():
    g = build_circuit_graph(6, 0)
    assert g.num_gates == 0
    assert len(g.edges) == 6
    assert hartley_entropy(g, [0, 1]).value == 0


def test_single_layer_counts():
    g = build_circuit_graph(4, 1)
    assert g.num_gates == 2
    assert len(g.edges) == 8


def test_gate_and_edge_counts_closed_form():
    n, d = 8, 4
    g = build_circuit_graph(n, d)
    assert g.num_gates == n * d // 2
    assert len(g.edges) == n * (d + 1)
    # every gate node has degree 4, terminals degree 1
    degree = np.zeros(g.num_nodes, dtype=int)
    for u, v in g.edges:
        degree[u] += 1
        degree[v] += 1
    assert (degree[: 2 * n] == 1).all()
    assert (degree[2 * n :] == 4).all()


def test_build_validation():
    with pytest.raises(ValueError):
        build_circuit_graph(5, 2)
    with pytest.raises(ValueError):
        build_circuit_graph(2, 2)
    with pytest.raises(ValueError):
        min_cut_value(build_circuit_graph(4, 1), [0, 1, 2, 3])


def test_single_layer_cut_counts_straddling_bricks():
    # layer 1 pairs (0,1),(2,3),...: A={0,1} has no straddling brick,
    # A={1,2} is straddled at both boundaries
    g = build_circuit_graph(8, 1)
    assert hartley_entropy(g, [0, 1]).value == 0
    assert hartley_entropy(g, [1, 2]).value == 2
    assert abs(hartley_entropy(g, [1, 2]).entropy - 2 * LN2) < 1e-12


@pytest.mark.parametrize(
    "n,depth,region",
    [
        (4, 1, (0, 1)),
        (4, 1, (1, 2)),
        (4, 2, (0, 1)),
        (4, 2, (0, 2)),
        (4, 3, (1,)),
        (6, 1, (1, 2)),
        (6, 1, (0, 3)),
        (8, 1, (1, 2, 3)),
    ],
)
def test_max_flow_matches_enumeration_oracle(n, depth, region):
    g = build_circuit_graph(n, depth)
    assert len(g.edges) <= 16 + n  # keep the exhaustive search tractable
    assert min_cut_value(g, region) == brute_force_min_cut(g, region)


def test_half_region_saturates_to_volume_law():
    # deep circuit: a contiguous region of size m carries min(m, n-m) ln 2
    g = build_circuit_graph(8, 8)
    assert hartley_entropy(g, [0, 1]).value == 2
    assert hartley_entropy(g, [0, 1, 2, 3]).value == 4
    assert hartley_entropy(g, [0, 1, 2, 3, 4, 5]).value == 2


def test_hartley_tee_plateau_and_saturation():
    n = 16
    vals = [hartley_tee(n, d) for d in range(0, n // 2 + 1)]
    for d in range(0, n // 8 + 1):
        assert vals[d] == 0.0
    for d in range(n // 4, n // 2 + 1):
        assert abs(vals[d] - (-(n * LN2) / 2.0)) < 1e-12
    assert all(vals[i + 1] <= vals[i] + 1e-12 for i in range(len(vals) - 1))


def test_hartley_tee_matches_enumeration_at_small_n():
    # n=8 quarters, shallow depths: compare the seven cuts with brute force
    n = 8
    for depth in (0, 1, 2):
        g = build_circuit_graph(n, depth)
        m = n // 4
        a = tuple(range(0, m))
        b = tuple(range(m, 2 * m))
        c = tuple(range(2 * m, 3 * m))
        total = 0
        for qubits, sign in [
            (a, 1), (b, 1), (c, 1),
            (a + b, -1), (a + c, -1), (b + c, -1),
            (a + b + c, 1),
        ]:
            total += sign * brute_force_min_cut(g, qubits)
        assert abs(hartley_tee(n, depth) - total * LN2) < 1e-12


def test_hartley_tee_requires_divisible_n():
    with pytest.raises(ValueError):
        hartley_tee(10, 2)


def test_mutual_information_locality():
    # I2(A,B) = 0 while the depth is below half the separation
    n = 16
    a, b = (0,), (8,)
    for depth in (1, 2, 3):
        g = build_circuit_graph(n, depth)
        i2 = (
            min_cut_value(g, a)
            + min_cut_value(g, b)
            - min_cut_value(g, a + b)
        )
        assert i2 == 0


def test_scaling_run_is_fast():
    import time

    t0 = time.perf_counter()
    for n in (8, 16, 32, 64, 128, 256, 512):
        for d in (1, n // 8, n // 4, n // 2):
            hartley_tee(n, d)
    assert time.perf_counter() - t0 < 60.0
