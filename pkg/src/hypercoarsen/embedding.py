"""Krylov-subspace vertex embeddings drawn from both hypergraph expansions."""
from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .expansion import (
    DEFAULT_MAX_CLIQUE_CARDINALITY,
    STAR,
    CLIQUE,
    ExpansionGraph,
    build_clique,
    build_star,
    normalized_adjacency_apply,
)
from .hypergraph import Hypergraph

logger = logging.getLogger(__name__)

DROP_TOL = 1e-10
THREADS_ENV = "HYPERCOARSEN_THREADS"


@dataclass(frozen=True)
class EmbeddingConfig:
    max_clique_cardinality: int = DEFAULT_MAX_CLIQUE_CARDINALITY
    workers: int = 0  # 0 = read HYPERCOARSEN_THREADS, then auto


@dataclass(frozen=True, eq=False)
class EmbeddingPool:
    """Orthonormal, mean-free embedding vectors over the hypergraph vertices.

    ``vectors`` has shape ``(pool_size, |V|)``; row ``i`` is one candidate
    embedding and ``source_tags[i]`` names the expansion and Krylov power
    it came from, e.g. ``clique:3``.
    """

    vectors: np.ndarray
    rho: int
    seed: int
    source_tags: tuple[str, ...]
    warnings: tuple[str, ...] = ()

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    def rows(self) -> np.ndarray:
        """Per-vertex embedding coordinates, shape ``(|V|, pool_size)``."""
        return self.vectors.T


def resolve_workers(requested: int = 0) -> int:
    if requested > 0:
        return requested
    env = os.environ.get(THREADS_ENV, "0").strip() or "0"
    try:
        n = int(env)
    except ValueError:
        n = 0
    return n if n > 0 else min(2, os.cpu_count() or 1)


def krylov_pool(G: ExpansionGraph, rho: int, seed, *, x: np.ndarray | None = None) -> list[np.ndarray]:
    """Return ``A x, A^2 x, ..., A^rho x`` restricted to hypergraph vertices.

    ``x`` is drawn uniform on [-1, 1] from ``seed`` unless given explicitly.
    Star-expansion vectors are truncated to the first ``|V|`` entries after
    the full iteration.
    """
    if rho < 1:
        raise ValueError("rho must be >= 1")
    if x is None:
        x = np.random.default_rng(seed).uniform(-1.0, 1.0, G.num_nodes)
    out = []
    v = np.asarray(x, dtype=np.float64)
    for _ in range(rho):
        v = normalized_adjacency_apply(G, v)
        out.append(v)
    if G.kind == STAR:
        out = [u[: G.num_vertices].copy() for u in out]
    return out


def orthonormalize(candidates: list[np.ndarray], drop_tol: float = DROP_TOL) -> tuple[list[np.ndarray], list[int]]:
    """Mean-deflate and modified-Gram-Schmidt the candidates in order.

    Returns the surviving unit vectors and the indices of the candidates
    they came from. A second projection pass runs whenever the first one
    removes more than half of a vector's norm.
    """
    basis: list[np.ndarray] = []
    kept: list[int] = []
    for idx, c in enumerate(candidates):
        v = c - c.mean()
        norm0 = np.linalg.norm(v)
        if norm0 == 0.0 or not np.isfinite(norm0):
            continue
        for _ in range(2):
            before = np.linalg.norm(v)
            for q in basis:
                v = v - np.dot(q, v) * q
            v = v - v.mean()
            after = np.linalg.norm(v)
            if after > 0.5 * before:
                break
        if after < drop_tol * norm0:
            continue
        basis.append(v / after)
        kept.append(idx)
    return basis, kept


def to_vertex_signal(G: ExpansionGraph, v: np.ndarray) -> np.ndarray:
    """Map a normalized-coordinate vector to a vertex signal via ``D^-1/2``.

    The normalized adjacency's top eigenvector is ``D^1/2 1``; after this
    map it becomes the constant vector, which mean deflation removes exactly.
    """
    return v * G.inv_sqrt_degree[: G.num_vertices]


def build_embedding_pool(H: Hypergraph, rho: int = 3, seed: int = 42, cfg: EmbeddingConfig | None = None) -> EmbeddingPool:
    """Build the joint star/clique Krylov embedding pool for ``H``.

    Candidates are Gram-Schmidt'ed jointly, smoothest first: clique powers
    ``rho..1`` then star powers ``rho..1``. At most ``2 * rho`` survive.
    """
    cfg = cfg or EmbeddingConfig()
    star_seed, clique_seed = np.random.SeedSequence(seed).spawn(2)
    jobs = ((build_clique, (H, cfg.max_clique_cardinality), clique_seed), (build_star, (H,), star_seed))

    def run(job):
        build, args, s = job
        G = build(*args)
        return [to_vertex_signal(G, v) for v in reversed(krylov_pool(G, rho, s))]

    if resolve_workers(cfg.workers) > 1:
        with ThreadPoolExecutor(max_workers=2) as ex:
            clique_vecs, star_vecs = ex.map(run, jobs)
    else:
        clique_vecs, star_vecs = map(run, jobs)

    tags = [f"{CLIQUE}:{rho - i}" for i in range(len(clique_vecs))]
    tags += [f"{STAR}:{rho - i}" for i in range(len(star_vecs))]
    basis, kept = orthonormalize(clique_vecs + star_vecs)
    warnings = ()
    if not basis:
        msg = f"empty embedding pool for {H!r} (rho={rho}, seed={seed})"
        logger.warning(msg)
        warnings = (msg,)
        vectors = np.empty((0, H.num_vertices))
    else:
        vectors = np.vstack(basis)
    vectors.setflags(write=False)
    return EmbeddingPool(vectors, rho, seed, tuple(tags[i] for i in kept), warnings)


def dump_pool(pool: EmbeddingPool, comments=()) -> str:
    """Text matrix, one row per vertex and one column per pool vector."""
    lines = [f"% {c}" for c in comments]
    lines.append("% columns: " + " ".join(pool.source_tags))
    for row in pool.rows():
        lines.append(" ".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"
