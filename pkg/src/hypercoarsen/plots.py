"""Report figures written next to the TSV artifacts.

Uses the object-oriented Agg API (no pyplot state) and strips PNG metadata
so identical inputs give byte-identical files.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

_PNG_META = {"Software": None}


def _figure(width=6.0, height=None):
    golden = (np.sqrt(5.0) - 1.0) / 2.0
    fig = Figure(figsize=(width, height or width * golden), dpi=100)
    FigureCanvasAgg(fig)
    return fig


def _save(fig, path) -> Path:
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, format="png", metadata=_PNG_META)
    return path


def plot_levels(rows: list[dict], path) -> Path:
    """Vertex/edge counts per level (log scale) with NR on a twin axis."""
    fig = _figure()
    ax = fig.add_subplot(111)
    lv = [r["level"] for r in rows]
    ax.plot(lv, [r["num_vertices"] for r in rows], "o-", label="|V|")
    ax.plot(lv, [max(r["num_edges"], 1) for r in rows], "s--", label="|E|")
    ax.set_yscale("log")
    ax.set_xlabel("level")
    ax.set_ylabel("count")
    ax.set_xticks(lv)
    ax2 = ax.twinx()
    ax2.plot(lv, [100 * r["nr"] for r in rows], "^:", color="tab:red", label="NR")
    ax2.set_ylabel("NR (%)")
    ax2.set_ylim(0, 100)
    handles = ax.get_legend_handles_labels()
    handles2 = ax2.get_legend_handles_labels()
    ax.legend(handles[0] + handles2[0], handles[1] + handles2[1], loc="center right", frameon=False)
    return _save(fig, path)


def plot_conductance(per_cluster_phi, path, phi_avg: float | None = None) -> Path:
    fig = _figure()
    ax = fig.add_subplot(111)
    phi = np.asarray(per_cluster_phi)
    ax.hist(phi, bins=np.linspace(0.0, 1.0, 21), color="tab:blue", edgecolor="white")
    if phi_avg is not None:
        ax.axvline(phi_avg, color="tab:red", linestyle="--", label=f"mean = {phi_avg:.4f}")
        ax.legend(frameon=False)
    ax.set_xlabel("cluster conductance")
    ax.set_ylabel("clusters")
    return _save(fig, path)


def plot_resistances(r, path) -> Path:
    """Sorted resistance profile; high tail marks bridge-like hyperedges."""
    fig = _figure()
    ax = fig.add_subplot(111)
    r = np.sort(np.asarray(r))
    ax.plot(np.arange(len(r)), r, lw=1.2)
    ax.set_xlabel("hyperedge rank")
    ax.set_ylabel("estimated resistance")
    if len(r) and r[-1] > 0 and r[r > 0].min() < r[-1] / 100:
        ax.set_yscale("log")
    return _save(fig, path)
