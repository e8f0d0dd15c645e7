"""Multilevel resistance-threshold contraction."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .embedding import EmbeddingConfig, build_embedding_pool
from .hypergraph import ClusterAssignment, Hypergraph, relabel_by_first_occurrence
from .resistance import ResistanceVector, ascending_order, estimate_resistances

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ContractionPolicy:
    """Threshold rule: ``absolute`` uses ``value`` as-is, ``quantile`` takes
    the ``value``-quantile of the accumulated resistances at each level."""

    kind: str = "quantile"
    value: float = 0.5

    def __post_init__(self):
        if self.kind not in ("absolute", "quantile"):
            raise ValueError(f"unknown policy kind {self.kind!r}")
        if self.kind == "quantile" and not 0.0 < self.value < 1.0:
            raise ValueError("quantile must lie in (0, 1)")

    @classmethod
    def parse(cls, text: str) -> "ContractionPolicy":
        """Parse ``abs:x`` or ``q:y``."""
        kind, sep, val = text.partition(":")
        if not sep:
            raise ValueError(f"bad delta policy {text!r}; expected abs:x or q:y")
        names = {"abs": "absolute", "absolute": "absolute", "q": "quantile", "quantile": "quantile"}
        if kind not in names:
            raise ValueError(f"bad delta policy {text!r}; expected abs:x or q:y")
        return cls(names[kind], float(val))

    def threshold(self, r: np.ndarray) -> float:
        if self.kind == "absolute":
            return float(self.value)
        if len(r) == 0:
            return 0.0
        return float(np.quantile(r, self.value))

    def __str__(self) -> str:
        return f"{'abs' if self.kind == 'absolute' else 'q'}:{self.value!r}"


@dataclass(frozen=True, eq=False)
class LevelState:
    fine: Hypergraph
    coarse: Hypergraph
    cluster_of: np.ndarray
    eta: np.ndarray
    coarse_eta: np.ndarray
    contracted_edges: tuple[int, ...]
    resistances: ResistanceVector
    delta: float
    cluster_sizes: np.ndarray
    seeds_found: int = 0
    seeds_merged: int = 0
    seeds_singleton: int = 0
    clusters_before_merge: int = -1

    @property
    def num_clusters(self) -> int:
        return self.coarse.num_vertices


@dataclass(frozen=True, eq=False)
class CoarseningHierarchy:
    original: Hypergraph
    levels: list[LevelState]
    composed_clusters: ClusterAssignment

    @property
    def coarse(self) -> Hypergraph:
        return self.levels[-1].coarse if self.levels else self.original

    @property
    def nr(self) -> float:
        return 1.0 - self.composed_clusters.num_clusters / self.original.num_vertices


@dataclass(frozen=True)
class CoarsenConfig:
    levels: int = 3
    rho: int = 3
    seed: int = 42
    policy: ContractionPolicy = field(default_factory=ContractionPolicy)
    local_clustering: bool = True
    embedding: EmbeddingConfig = field(default_factory=EmbeddingConfig)


def accumulate_resistance(H: Hypergraph, R: ResistanceVector, eta: np.ndarray) -> ResistanceVector:
    """Add the summed supernode weights of each edge's pins to its resistance."""
    eta = np.asarray(eta, dtype=np.float64)
    if eta.shape != (H.num_vertices,):
        raise ValueError("eta length must equal the vertex count")
    if H.num_edges == 0:
        return R
    r = np.add.reduceat(eta[H.pins], H.offsets[:-1]) + R.r
    return ResistanceVector(r, ascending_order(r), R.qh)


def collapse(H: Hypergraph, cluster_of: np.ndarray, num_clusters: int) -> Hypergraph:
    """Map pins through ``cluster_of`` and rebuild.

    Pins are deduplicated per edge, edges left with fewer than two pins are
    dropped, and identical coarse edges merge by summing weights. Coarse
    edges keep the order of their first fine occurrence.
    """
    vw = np.bincount(cluster_of, weights=H.vertex_weights, minlength=num_clusters)
    if H.num_edges == 0:
        return Hypergraph._from_arrays(num_clusters, np.empty(0, np.int64), np.zeros(1, np.int64), np.empty(0), vw)
    cp = cluster_of[H.pins]
    eid = H.edge_of_pin
    order = np.lexsort((cp, eid))
    cp, eid = cp[order], eid[order]
    keep = np.ones(len(cp), dtype=bool)
    keep[1:] = (cp[1:] != cp[:-1]) | (eid[1:] != eid[:-1])
    cp, eid = cp[keep], eid[keep]
    sizes = np.bincount(eid, minlength=H.num_edges)
    bounds = np.concatenate(([0], np.cumsum(sizes))).tolist()
    flat = cp.tolist()
    weights = H.weights.tolist()

    merged: dict[tuple[int, ...], int] = {}
    new_w: list[float] = []
    for e in np.flatnonzero(sizes >= 2).tolist():
        key = tuple(flat[bounds[e]:bounds[e + 1]])
        slot = merged.get(key)
        if slot is None:
            merged[key] = len(new_w)
            new_w.append(weights[e])
        else:
            new_w[slot] += weights[e]
    pins = np.fromiter((v for key in merged for v in key), dtype=np.int64)
    offsets = np.concatenate(([0], np.cumsum([len(k) for k in merged], dtype=np.int64)))
    return Hypergraph._from_arrays(num_clusters, pins, offsets, np.asarray(new_w), vw)


def contract_level(H: Hypergraph, R: ResistanceVector, eta: np.ndarray, policy: ContractionPolicy) -> LevelState:
    """Greedy contraction in ascending resistance order.

    An edge with ``r < delta`` becomes one supernode only if none of its
    vertices has been claimed yet at this level. Supernodes carry the
    forming edge's resistance as their ``eta``; singletons keep theirs.
    """
    eta = np.asarray(eta, dtype=np.float64)
    delta = policy.threshold(R.r)
    pins = H.pins.tolist()
    offs = H.offsets.tolist()
    r = R.r.tolist()
    label = [-1] * H.num_vertices
    super_eta: list[float] = []
    contracted: list[int] = []
    for e in R.order.tolist():
        if not r[e] < delta:
            break
        members = pins[offs[e]:offs[e + 1]]
        if any(label[v] >= 0 for v in members):
            continue
        cid = len(super_eta)
        for v in members:
            label[v] = cid
        super_eta.append(r[e])
        contracted.append(e)

    label = np.asarray(label, dtype=np.int64)
    singles = label < 0
    n_super = len(super_eta)
    label[singles] = n_super + np.arange(int(singles.sum()))
    tmp_eta = np.concatenate((np.asarray(super_eta), eta[singles]))
    cluster_of = relabel_by_first_occurrence(label)
    k = int(cluster_of.max()) + 1 if len(cluster_of) else 0
    coarse_eta = np.empty(k)
    coarse_eta[cluster_of] = tmp_eta[label]
    return LevelState(
        fine=H,
        coarse=collapse(H, cluster_of, k),
        cluster_of=cluster_of,
        eta=eta,
        coarse_eta=coarse_eta,
        contracted_edges=tuple(contracted),
        resistances=R,
        delta=delta,
        cluster_sizes=np.bincount(cluster_of, minlength=k),
        clusters_before_merge=k,
    )


def level_seed(seed: int, level: int) -> int:
    return int(np.random.SeedSequence([seed, level]).generate_state(1)[0])


def coarsen_multilevel(H: Hypergraph, cfg: CoarsenConfig | None = None) -> CoarseningHierarchy:
    """Run up to ``cfg.levels`` rounds of estimate -> accumulate -> contract
    (-> local clustering). Stops early once a level contracts nothing."""
    from .localcluster import merge_isolated

    cfg = cfg or CoarsenConfig()
    if cfg.levels < 1 or cfg.rho < 1:
        raise ValueError("levels and rho must be >= 1")
    current = H
    eta = np.zeros(H.num_vertices)
    levels: list[LevelState] = []
    for lvl in range(cfg.levels):
        if current.num_edges == 0:
            break
        pool = build_embedding_pool(current, cfg.rho, level_seed(cfg.seed, lvl), cfg.embedding)
        if pool.size == 0:
            logger.warning("level %d: empty embedding pool, stopping", lvl)
            break
        R = accumulate_resistance(current, estimate_resistances(current, pool), eta)
        state = contract_level(current, R, eta, cfg.policy)
        if not state.contracted_edges:
            logger.info("level %d: nothing contracted, stopping", lvl)
            break
        if cfg.local_clustering:
            state = merge_isolated(state, pool)
        logger.info(
            "level %d: |V| %d -> %d, |E| %d -> %d",
            lvl, current.num_vertices, state.coarse.num_vertices, current.num_edges, state.coarse.num_edges,
        )
        levels.append(state)
        current, eta = state.coarse, state.coarse_eta
    return CoarseningHierarchy(H, levels, compose([lv.cluster_of for lv in levels], H.num_vertices))


def compose(maps: list[np.ndarray], n: int) -> ClusterAssignment:
    comp = np.arange(n, dtype=np.int64)
    for m in maps:
        comp = m[comp]
    return ClusterAssignment.from_labels(comp)


LEVEL_COLUMNS = (
    "level", "num_vertices", "num_edges", "delta", "contracted", "clusters_before_merge",
    "seeds_found", "seeds_merged", "seeds_singleton", "nr",
)


def level_rows(hier: CoarseningHierarchy) -> list[dict]:
    """Per-level summary rows; ``nr`` is relative to the original vertex count."""
    n0 = hier.original.num_vertices
    rows = [dict(level=0, num_vertices=n0, num_edges=hier.original.num_edges, delta=float("nan"),
                 contracted=0, clusters_before_merge=n0, seeds_found=0, seeds_merged=0,
                 seeds_singleton=0, nr=0.0)]
    for i, lv in enumerate(hier.levels, start=1):
        rows.append(dict(
            level=i, num_vertices=lv.coarse.num_vertices, num_edges=lv.coarse.num_edges,
            delta=lv.delta, contracted=len(lv.contracted_edges),
            clusters_before_merge=lv.clusters_before_merge, seeds_found=lv.seeds_found,
            seeds_merged=lv.seeds_merged, seeds_singleton=lv.seeds_singleton,
            nr=1.0 - lv.coarse.num_vertices / n0,
        ))
    return rows


def write_levels(hier: CoarseningHierarchy, comments=()) -> str:
    lines = [f"% {c}" for c in comments]
    lines.append("\t".join(LEVEL_COLUMNS))
    for row in level_rows(hier):
        lines.append("\t".join(repr(row[c]) if isinstance(row[c], float) else str(row[c]) for c in LEVEL_COLUMNS))
    return "\n".join(lines) + "\n"

