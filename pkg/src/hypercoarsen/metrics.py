"""Cut, conductance, clustering quality and the resistance-based rating export."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MetricError
from .hypergraph import ClusterAssignment, Hypergraph, vertex_degrees
from .resistance import ResistanceVector

RATING_GUARD = 1e-6
_GUARD_TRIGGER = 1e-12
MAX_EXHAUSTIVE_VERTICES = 20


def _membership(H: Hypergraph, S) -> np.ndarray:
    mask = np.zeros(H.num_vertices, dtype=bool)
    idx = np.asarray(list(S) if not isinstance(S, np.ndarray) else S)
    if idx.dtype == bool:
        if idx.shape != mask.shape:
            raise MetricError("bad-set", "boolean mask length must equal the vertex count")
        return idx.copy()
    if idx.size:
        if idx.min() < 0 or idx.max() >= H.num_vertices:
            raise MetricError("bad-set", "vertex set contains ids outside the hypergraph")
        mask[idx.astype(np.int64)] = True
    return mask


def cut_and_volume(H: Hypergraph, S) -> tuple[float, float, float]:
    """Weighted cut of ``S`` plus the volumes of ``S`` and its complement."""
    mask = _membership(H, S)
    deg = vertex_degrees(H)
    vol_s = float(deg[mask].sum())
    vol_c = float(deg.sum()) - vol_s
    if H.num_edges == 0:
        return 0.0, vol_s, vol_c
    inside = np.add.reduceat(mask[H.pins].astype(np.int64), H.offsets[:-1])
    split = (inside > 0) & (inside < H.sizes)
    return float(H.weights[split].sum()), vol_s, vol_c


def conductance(H: Hypergraph, S) -> float:
    mask = _membership(H, S)
    k = int(mask.sum())
    if k == 0 or k == H.num_vertices:
        raise MetricError("trivial-set", "conductance needs a non-empty proper subset")
    cut, vol_s, vol_c = cut_and_volume(H, mask)
    denom = min(vol_s, vol_c)
    if denom <= 0:
        raise MetricError("zero-volume", "smaller side of the cut has zero volume")
    return cut / denom


def hypergraph_conductance(H: Hypergraph) -> tuple[float, np.ndarray]:
    """Exact minimum conductance by enumerating all proper subsets.

    Returns ``(phi_H, mask)`` for the lexicographically first minimizer in
    bitmask order. Subsets whose smaller side has zero volume are skipped.
    """
    n = H.num_vertices
    if not 2 <= n <= MAX_EXHAUSTIVE_VERTICES:
        raise MetricError("too-large", f"exhaustive enumeration supports 2..{MAX_EXHAUSTIVE_VERTICES} vertices")
    masks = np.arange(1, 2**n - 1, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
    deg = vertex_degrees(H)
    vol_s = bits @ deg
    vol_c = deg.sum() - vol_s
    cut = np.zeros(len(masks))
    for e in range(H.num_edges):
        members = H.pins[H.offsets[e]:H.offsets[e + 1]]
        cnt = bits[:, members].sum(axis=1)
        cut += np.where((cnt > 0) & (cnt < len(members)), H.weights[e], 0.0)
    denom = np.minimum(vol_s, vol_c)
    valid = denom > 0
    if not valid.any():
        raise MetricError("zero-volume", "no subset has positive volume on both sides")
    phi = np.full(len(masks), np.inf)
    phi[valid] = cut[valid] / denom[valid]
    best = int(np.argmin(phi))
    return float(phi[best]), bits[best]


@dataclass(frozen=True)
class EvaluationReport:
    phi_avg: float
    per_cluster_phi: tuple[float, ...]
    cut_size: float
    nr: float
    balance: float
    num_clusters: int
    num_vertices: int
    zero_volume_clusters: tuple[int, ...] = ()

    def to_tsv(self, comments=()) -> str:
        lines = [f"% {c}" for c in comments]
        lines.append("metric\tvalue")
        lines += [
            f"num_vertices\t{self.num_vertices}",
            f"num_clusters\t{self.num_clusters}",
            f"nr\t{self.nr!r}",
            f"phi_avg\t{self.phi_avg!r}",
            f"cut_size\t{self.cut_size!r}",
            f"balance\t{self.balance!r}",
            f"zero_volume_clusters\t{len(self.zero_volume_clusters)}",
        ]
        lines.append("")
        lines.append("cluster\tphi")
        lines += [f"{i}\t{p!r}" for i, p in enumerate(self.per_cluster_phi)]
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        rows = [
            ("vertices", f"{self.num_vertices}"),
            ("clusters", f"{self.num_clusters}"),
            ("NR", f"{100 * self.nr:.2f}%"),
            ("phi_avg", f"{self.phi_avg:.6f}"),
            ("cut size", f"{self.cut_size:g}"),
            ("balance", f"{self.balance:.4f}"),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def evaluate_clustering(H: Hypergraph, A: ClusterAssignment) -> EvaluationReport:
    """Per-cluster conductance, unweighted mean, total cut, NR and balance.

    The total cut counts every hyperedge spanning two or more clusters once.
    Clusters whose smaller side has zero volume get conductance 1 and are
    listed in ``zero_volume_clusters``.
    """
    if len(A) != H.num_vertices:
        raise MetricError("size-mismatch", "cluster assignment does not cover the hypergraph's vertices")
    k = A.num_clusters
    lab = A.cluster_of
    deg = vertex_degrees(H)
    vol = np.bincount(lab, weights=deg, minlength=k)
    total = deg.sum()

    cut_per = np.zeros(k)
    total_cut = 0.0
    if H.num_edges:
        edge_ids = H.edge_of_pin
        pin_lab = lab[H.pins]
        # unique (edge, cluster) pairs
        key = np.unique(edge_ids * k + pin_lab)
        e_of, c_of = key // k, key % k
        n_parts = np.bincount(e_of, minlength=H.num_edges)
        spanning = n_parts > 1
        total_cut = float(H.weights[spanning].sum())
        hit = spanning[e_of]
        cut_per = np.bincount(c_of[hit], weights=H.weights[e_of[hit]], minlength=k)

    denom = np.minimum(vol, total - vol)
    phi = np.ones(k)
    ok = denom > 0
    phi[ok] = cut_per[ok] / denom[ok]
    zero = tuple(int(i) for i in np.flatnonzero(~ok))

    weights = np.bincount(lab, weights=H.vertex_weights, minlength=k)
    ideal = H.vertex_weights.sum() / k if k else 0.0
    balance = float(weights.max() / ideal) if ideal > 0 else 0.0
    return EvaluationReport(
        phi_avg=float(phi.mean()) if k else 0.0,
        per_cluster_phi=tuple(phi.tolist()),
        cut_size=total_cut,
        nr=1.0 - k / H.num_vertices if H.num_vertices else 0.0,
        balance=balance,
        num_clusters=k,
        num_vertices=H.num_vertices,
        zero_volume_clusters=zero,
    )


def rating_denominators(R: ResistanceVector) -> tuple[np.ndarray, np.ndarray]:
    """``R_e - 1`` per edge with near-zero values replaced by the guard.

    Returns ``(denominator, guarded_mask)``.
    """
    denom = R.r - 1.0
    guarded = np.abs(denom) <= _GUARD_TRIGGER
    denom = np.where(guarded, RATING_GUARD, denom)
    return denom, guarded


def rating(H: Hypergraph, R: ResistanceVector, p: int, q: int) -> float:
    """Pair score: sum of ``w(e) / (R_e - 1)`` over edges holding both vertices."""
    if p == q:
        raise MetricError("same-vertex", "rating needs two distinct vertices")
    denom, _ = rating_denominators(R)
    inc = H.incident_edges()
    shared = sorted(set(inc[p]) & set(inc[q]))
    return float(sum(H.weights[e] / denom[e] for e in shared))


def write_rating(H: Hypergraph, R: ResistanceVector, comments=()) -> str:
    denom, guarded = rating_denominators(R)
    lines = [f"% {c}" for c in comments]
    flagged = np.flatnonzero(guarded).tolist()
    lines.append(f"% guard={RATING_GUARD!r} guarded_edges={len(flagged)}" + (
        " ids=" + ",".join(map(str, flagged)) if flagged else ""))
    lines.append("% edge_id\tweight\tR_e\tdenominator")
    for e in range(H.num_edges):
        lines.append(f"{e}\t{float(H.weights[e])!r}\t{float(R.r[e])!r}\t{float(denom[e])!r}")
    return "\n".join(lines) + "\n"
