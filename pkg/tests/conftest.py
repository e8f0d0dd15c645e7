"""Independent oracles shared by the test modules.

These deliberately avoid the package's vectorized code paths: dense
matrices, pure-Python loops and exhaustive enumeration only.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest

from hypercoarsen import Hypergraph


def dense_laplacian(H: Hypergraph) -> np.ndarray:
    """Graph Laplacian of a cardinality-2 hypergraph."""
    n = H.num_vertices
    L = np.zeros((n, n))
    for (u, v), w in H.hyperedges:
        L[u, u] += w
        L[v, v] += w
        L[u, v] -= w
        L[v, u] -= w
    return L


def exact_resistances(H: Hypergraph) -> np.ndarray:
    """``b_pq^T L^+ b_pq`` per edge of a cardinality-2 hypergraph."""
    P = np.linalg.pinv(dense_laplacian(H))
    return np.array([P[u, u] + P[v, v] - 2 * P[u, v] for (u, v), _ in H.hyperedges])


def brute_cut_vol(H: Hypergraph, S: set[int]) -> tuple[float, float, float]:
    deg = [0.0] * H.num_vertices
    cut = 0.0
    for pins, w in H.hyperedges:
        for v in pins:
            deg[v] += w
        inside = sum(1 for v in pins if v in S)
        if 0 < inside < len(pins):
            cut += w
    vol_s = sum(deg[v] for v in S)
    return cut, vol_s, sum(deg) - vol_s


def brute_min_conductance(H: Hypergraph) -> float:
    best = float("inf")
    n = H.num_vertices
    for r in range(1, n):
        for S in combinations(range(n), r):
            cut, a, b = brute_cut_vol(H, set(S))
            if min(a, b) > 0:
                best = min(best, cut / min(a, b))
    return best


def random_small_hypergraph(seed: int, max_n: int = 10, max_m: int = 15) -> Hypergraph:
    """Random hypergraph with mixed cardinalities 2..4, built without package helpers."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, max_n + 1))
    m = int(rng.integers(3, max_m + 1))
    edges, weights = [], []
    for _ in range(m):
        c = int(rng.integers(2, min(4, n) + 1))
        edges.append(sorted(rng.choice(n, size=c, replace=False).tolist()))
        weights.append(float(rng.integers(1, 4)))
    return Hypergraph.from_edges(n, edges, weights)


@pytest.fixture
def path3() -> Hypergraph:
    return Hypergraph.from_edges(3, [[0, 1], [1, 2]])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
