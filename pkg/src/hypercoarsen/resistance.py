"""Hyperedge effective-resistance estimates from an embedding pool."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embedding import EmbeddingPool
from .errors import EmbeddingError
from .hypergraph import Hypergraph


@dataclass(frozen=True, eq=False)
class ResistanceVector:
    r: np.ndarray
    order: np.ndarray
    qh: np.ndarray

    @classmethod
    def from_values(cls, r, qh=None) -> "ResistanceVector":
        r = np.asarray(r, dtype=np.float64)
        qh = np.empty(0) if qh is None else np.asarray(qh, dtype=np.float64)
        return cls(r, ascending_order(r), qh)

    def __len__(self) -> int:
        return len(self.r)


def ascending_order(r: np.ndarray) -> np.ndarray:
    """Edge ids sorted by ``r``; ties keep ascending edge id."""
    return np.argsort(r, kind="stable")


def edge_spread(H: Hypergraph, chi: np.ndarray) -> np.ndarray:
    """Per-edge ``(max chi - min chi)^2`` over the edge's pins."""
    vals = np.asarray(chi, dtype=np.float64)[H.pins]
    starts = H.offsets[:-1]
    if len(starts) == 0:
        return np.empty(0)
    return (np.maximum.reduceat(vals, starts) - np.minimum.reduceat(vals, starts)) ** 2


def nonlinear_quadratic_form(H: Hypergraph, chi: np.ndarray) -> float:
    """``sum_e w_e * max_{u,v in e} (chi_u - chi_v)^2``."""
    if len(chi) != H.num_vertices:
        raise ValueError("chi length must equal the vertex count")
    return float(np.dot(H.weights, edge_spread(H, chi)))


def extreme_pair(H: Hypergraph, e: int, chi: np.ndarray) -> tuple[int, int]:
    """``(argmax, argmin)`` of ``chi`` over the pins of ``e``; ties -> lowest id."""
    members = H.pins[H.offsets[e]:H.offsets[e + 1]]
    vals = np.asarray(chi)[members]
    # pins are sorted, so np.argmax/argmin already return the lowest id
    return int(members[np.argmax(vals)]), int(members[np.argmin(vals)])


def resistance_ratio(H: Hypergraph, e: int, chi: np.ndarray, qh: float) -> float:
    if qh <= 0:
        return 0.0
    p, q = extreme_pair(H, e, chi)
    return float((chi[p] - chi[q]) ** 2 / qh)


def estimate_resistances(H: Hypergraph, pool: EmbeddingPool) -> ResistanceVector:
    """Maximum resistance ratio over every pool vector, for each hyperedge."""
    if pool.size == 0:
        raise EmbeddingError("empty-pool", "cannot estimate resistances from an empty embedding pool")
    r = np.zeros(H.num_edges)
    qh = np.empty(pool.size)
    for i, chi in enumerate(pool.vectors):
        spread = edge_spread(H, chi)
        qh[i] = float(np.dot(H.weights, spread))
        if qh[i] > 0:
            np.maximum(r, spread / qh[i], out=r)
    return ResistanceVector(r, ascending_order(r), qh)


def write_resistances(R: ResistanceVector, comments=()) -> str:
    lines = [f"% {c}" for c in comments]
    lines.append("% edge_id\tR_e")
    lines.extend(f"{e}\t{x!r}" for e, x in enumerate(R.r.tolist()))
    return "\n".join(lines) + "\n"
