"""Resistance-based local clustering of isolated supernodes.

After a contraction level some coarse vertices are still singletons. Each
one is merged into the nearest cluster found among its hyperedge
co-members, with distance measured in the embedding space of the level.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .coarsen import LevelState, collapse
from .embedding import EmbeddingPool
from .hypergraph import Hypergraph, relabel_by_first_occurrence


@dataclass(frozen=True)
class LocalNeighborhood:
    seed: int
    neighbor_clusters: tuple[int, ...]
    sub_edges: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted((self.seed, *self.neighbor_clusters)))


def identify_isolated(level: LevelState) -> list[int]:
    """Coarse vertices formed from exactly one fine vertex, ascending."""
    return np.flatnonzero(level.cluster_sizes == 1).tolist()


def neighbor_clusters(Hc: Hypergraph, seed: int) -> list[int]:
    """Union of co-members over the seed's incident hyperedges, ascending."""
    inc = Hc.incident_edges()
    pins, offs = Hc.pins, Hc.offsets
    found: set[int] = set()
    for e in inc[seed]:
        found.update(pins[offs[e]:offs[e + 1]].tolist())
    found.discard(seed)
    return sorted(found)


def build_neighborhood(Hc: Hypergraph, seed: int) -> LocalNeighborhood:
    """Seed, its neighbor set and the edges lying entirely inside both."""
    if not 0 <= seed < Hc.num_vertices:
        raise ValueError(f"seed {seed} outside the hypergraph")
    kappa = neighbor_clusters(Hc, seed)
    local = set(kappa)
    local.add(seed)
    inc = Hc.incident_edges()
    candidates = sorted({e for v in local for e in inc[v]})
    sub = [e for e in candidates if local.issuperset(Hc.edge(e))]
    return LocalNeighborhood(seed, tuple(kappa), tuple(sub))


def cluster_centroid(pool: EmbeddingPool, members) -> np.ndarray:
    """Mean embedding coordinates of ``members``, one entry per pool vector."""
    members = np.asarray(members, dtype=np.int64)
    if members.size == 0:
        raise ValueError("centroid of an empty cluster")
    return pool.vectors[:, members].mean(axis=1)


def cluster_centroids(pool: EmbeddingPool, cluster_of: np.ndarray, k: int) -> np.ndarray:
    """All centroids at once, shape ``(k, pool.size)``."""
    counts = np.bincount(cluster_of, minlength=k).astype(np.float64)
    out = np.empty((k, pool.size))
    for i, chi in enumerate(pool.vectors):
        out[:, i] = np.bincount(cluster_of, weights=chi, minlength=k) / counts
    return out


def merge_isolated(level: LevelState, pool: EmbeddingPool) -> LevelState:
    """Merge every isolated seed into its closest neighboring cluster.

    ``pool`` must be the embedding of ``level.fine``. Seeds are visited in
    ascending id; centroids are computed once up front and not refreshed.
    A merge takes effect immediately, so later seeds see enlarged clusters,
    and a seed that has already absorbed another seed is no longer isolated.
    The merged cluster's ``eta`` becomes ``eta_target + eta_seed + d_min``.
    """
    Hc = level.coarse
    k = Hc.num_vertices
    seeds = identify_isolated(level)
    if not seeds:
        return replace(level, seeds_found=0, seeds_merged=0, seeds_singleton=0)
    cent = cluster_centroids(pool, level.cluster_of, k)
    parent = list(range(k))
    size = level.cluster_sizes.tolist()
    eta = level.coarse_eta.tolist()

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for s in seeds:
        if parent[s] != s or size[s] != 1:
            continue
        kappa = neighbor_clusters(Hc, s)
        if not kappa:
            continue
        d = ((cent[kappa] - cent[s]) ** 2).sum(axis=1).tolist()
        best_d, target = min((dj, find(j)) for dj, j in zip(d, kappa))
        parent[s] = target
        size[target] += 1
        eta[target] = eta[target] + eta[s] + best_d

    roots = np.asarray([find(c) for c in range(k)], dtype=np.int64)
    cluster_of = relabel_by_first_occurrence(roots[level.cluster_of])
    k_new = int(cluster_of.max()) + 1
    # coarse vertex -> new cluster, via any fine member
    coarse_to_new = np.empty(k, dtype=np.int64)
    coarse_to_new[level.cluster_of] = cluster_of
    eta_arr = np.asarray(eta)
    coarse_eta = np.empty(k_new)
    coarse_eta[coarse_to_new[roots]] = eta_arr[roots]
    sizes = np.bincount(cluster_of, minlength=k_new)
    merged = int(np.count_nonzero(sizes[coarse_to_new[seeds]] > 1))
    return replace(
        level,
        coarse=collapse(Hc, coarse_to_new, k_new),
        cluster_of=cluster_of,
        coarse_eta=coarse_eta,
        cluster_sizes=sizes,
        seeds_found=len(seeds),
        seeds_merged=merged,
        seeds_singleton=len(seeds) - merged,
    )
