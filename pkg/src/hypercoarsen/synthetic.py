"""Seeded synthetic hypergraph generators used by tests and benchmarks."""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .hypergraph import Hypergraph


def barbell(k: int, pendant: bool = False) -> tuple[Hypergraph, int]:
    """Two k-cliques of 2-pin edges joined by one bridge edge.

    Vertices ``0..k-1`` form the first clique, ``k..2k-1`` the second; the
    bridge joins ``k-1`` and ``k``. With ``pendant`` an extra vertex ``2k``
    hangs off vertex 0. Returns ``(H, bridge_edge_id)``.
    """
    edges = [list(p) for p in combinations(range(k), 2)]
    edges += [list(p) for p in combinations(range(k, 2 * k), 2)]
    bridge = len(edges)
    edges.append([k - 1, k])
    n = 2 * k
    if pendant:
        edges.append([0, n])
        n += 1
    return Hypergraph.from_edges(n, edges), bridge


def random_hypergraph(
    n: int, m: int, seed, min_card: int = 2, max_card: int = 4, connected: bool = True
) -> Hypergraph:
    """Uniform random hyperedges with integer weights in 1..3.

    With ``connected`` a random spanning path of 2-pin edges is included
    (counted within ``m`` when possible).
    """
    rng = np.random.default_rng(seed)
    edges = []
    if connected:
        perm = rng.permutation(n)
        edges += [[int(perm[i]), int(perm[i + 1])] for i in range(n - 1)]
    while len(edges) < m:
        c = int(rng.integers(min_card, max_card + 1))
        edges.append(rng.choice(n, size=min(c, n), replace=False).tolist())
    weights = rng.integers(1, 4, size=len(edges)).astype(float)
    return Hypergraph.from_edges(n, edges, weights)


def random_graph(n: int, extra_edges: int, seed) -> Hypergraph:
    """Connected random graph as a cardinality-2 hypergraph (random tree + chords)."""
    rng = np.random.default_rng(seed)
    edges = [[int(rng.integers(0, v)), v] for v in range(1, n)]
    seen = {tuple(sorted(e)) for e in edges}
    tries = 0
    while extra_edges > 0 and tries < 50 * n:
        tries += 1
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        edges.append(list(key))
        extra_edges -= 1
    weights = rng.uniform(0.5, 2.0, size=len(edges))
    return Hypergraph.from_edges(n, edges, weights)


def planted_partition(
    n: int = 400,
    k: int = 8,
    seed=0,
    edges_per_vertex: float = 2.0,
    p_intra: float = 0.9,
    min_card: int = 2,
    max_card: int = 4,
) -> tuple[Hypergraph, np.ndarray]:
    """Hypergraph with ``k`` equal planted blocks.

    Each hyperedge lies inside one random block with probability
    ``p_intra``, otherwise its pins are drawn from the whole vertex set.
    Returns ``(H, block_of_vertex)``.
    """
    rng = np.random.default_rng(seed)
    block = np.arange(n) * k // n
    members = [np.flatnonzero(block == b) for b in range(k)]
    m = int(edges_per_vertex * n)
    edges = []
    for _ in range(m):
        c = int(rng.integers(min_card, max_card + 1))
        if rng.random() < p_intra:
            pool = members[int(rng.integers(k))]
        else:
            pool = np.arange(n)
        edges.append(rng.choice(pool, size=c, replace=False).tolist())
    return Hypergraph.from_edges(n, edges), block


def netlist_like(n: int, m: int, seed, mean_card: float = 4.0, locality: int = 64) -> Hypergraph:
    """Large sparse hypergraph with local structure, built vectorized.

    Cardinalities are ``2 + Poisson(mean_card - 2)`` (capped at 64); pins are
    drawn near a random anchor so the instance has clusterable locality.
    """
    rng = np.random.default_rng(seed)
    sizes = np.minimum(2 + rng.poisson(mean_card - 2.0, size=m), 64)
    anchors = rng.integers(0, n, size=m)
    offsets = rng.integers(-locality, locality + 1, size=int(sizes.sum()))
    pins = (np.repeat(anchors, sizes) + offsets) % n
    bounds = np.concatenate(([0], np.cumsum(sizes)))
    flat = pins.tolist()
    edges = [flat[bounds[i]:bounds[i + 1]] for i in range(m)]
    return Hypergraph.from_edges(n, edges)
