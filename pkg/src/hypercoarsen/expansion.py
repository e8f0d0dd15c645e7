"""Star and clique expansions of a hypergraph and the normalized-adjacency operator."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np
import scipy.sparse as sp

from .hypergraph import Hypergraph

STAR = "star"
CLIQUE = "clique"
DEFAULT_MAX_CLIQUE_CARDINALITY = 300


@dataclass(frozen=True, eq=False)
class ExpansionGraph:
    """Weighted simple graph derived from a hypergraph.

    ``adjacency`` is a symmetric CSR matrix with canonical (sorted, summed)
    rows, so every row is reduced in the same fixed neighbor order.
    For the star kind, nodes ``0..|V|-1`` are vertices and the rest are
    hyperedge nodes.
    """

    kind: str
    num_vertices: int
    adjacency: sp.csr_matrix
    degree: np.ndarray
    inv_sqrt_degree: np.ndarray

    @property
    def num_nodes(self) -> int:
        return self.adjacency.shape[0]

    @property
    def num_edges(self) -> int:
        return self.adjacency.nnz // 2


def _make(kind: str, num_vertices: int, rows, cols, vals, size: int) -> ExpansionGraph:
    A = sp.coo_matrix(
        (np.concatenate([vals, vals]), (np.concatenate([rows, cols]), np.concatenate([cols, rows]))),
        shape=(size, size),
    ).tocsr()
    A.sum_duplicates()
    A.sort_indices()
    degree = np.asarray(A.sum(axis=1)).ravel()
    inv_sqrt = np.zeros_like(degree)
    nz = degree > 0
    inv_sqrt[nz] = 1.0 / np.sqrt(degree[nz])
    return ExpansionGraph(kind, num_vertices, A, degree, inv_sqrt)


def build_star(H: Hypergraph) -> ExpansionGraph:
    """Bipartite expansion: one edge per pin, weighted ``w(e) / |e|``."""
    n = H.num_vertices
    edge_ids = H.edge_of_pin
    vals = (H.weights / H.sizes)[edge_ids]
    return _make(STAR, n, H.pins, n + edge_ids, vals, n + H.num_edges)


def build_clique(H: Hypergraph, max_clique_cardinality: int = DEFAULT_MAX_CLIQUE_CARDINALITY) -> ExpansionGraph:
    """Clique expansion with each edge's weight spread evenly over its pairs.

    Hyperedges larger than ``max_clique_cardinality`` are skipped.
    """
    if max_clique_cardinality < 2:
        raise ValueError("max_clique_cardinality must be >= 2")
    sizes = H.sizes
    rows, cols, vals = [], [], []
    for k in np.unique(sizes):
        if k > max_clique_cardinality:
            continue
        ids = np.flatnonzero(sizes == k)
        block = H.pins[H.offsets[ids][:, None] + np.arange(k)]
        iu, ju = np.triu_indices(int(k), 1)
        rows.append(block[:, iu].ravel())
        cols.append(block[:, ju].ravel())
        vals.append(np.repeat(H.weights[ids] / comb(int(k), 2), len(iu)))
    if rows:
        rows, cols, vals = np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)
    else:
        rows = cols = np.empty(0, dtype=np.int64)
        vals = np.empty(0)
    return _make(CLIQUE, H.num_vertices, rows, cols, vals, H.num_vertices)


def normalized_adjacency_apply(G: ExpansionGraph, x: np.ndarray) -> np.ndarray:
    """Return ``D^-1/2 A D^-1/2 x``; isolated nodes map to 0."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (G.num_nodes,):
        raise ValueError(f"dimension mismatch: expected {G.num_nodes}, got {x.shape}")
    s = G.inv_sqrt_degree
    return s * (G.adjacency @ (s * x))
