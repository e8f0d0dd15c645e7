"""Hypergraph data model, hMETIS ``.hgr`` I/O and cluster-file I/O.

Vertex ids are 0-based everywhere inside the package. hMETIS files are
1-based; conversion happens only in :func:`parse_hgr` and :func:`write_hgr`.
"""
from __future__ import annotations

import io
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import ClusterFormatError, HypergraphFormatError

logger = logging.getLogger(__name__)

_VALID_FMTS = {None, 1, 10, 11}


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """Weighted hypergraph stored in CSR incidence layout.

    ``pins[offsets[e]:offsets[e + 1]]`` are the vertices of hyperedge ``e``,
    sorted ascending and free of duplicates. All arrays are read-only.
    Use :meth:`from_edges` to build a validated instance.
    """

    num_vertices: int
    pins: np.ndarray
    offsets: np.ndarray
    weights: np.ndarray
    vertex_weights: np.ndarray
    dropped_singletons: int = 0
    _incidence: list = field(default_factory=list, repr=False, compare=False)

    @classmethod
    def from_edges(
        cls,
        num_vertices: int,
        edges: Iterable[Sequence[int]],
        weights: Sequence[float] | None = None,
        vertex_weights: Sequence[float] | None = None,
    ) -> "Hypergraph":
        """Validate and build a hypergraph.

        Duplicate pins inside an edge are collapsed; edges left with a single
        pin are dropped and counted in ``dropped_singletons``. Duplicate edges
        are kept as distinct edges.
        """
        if int(num_vertices) != num_vertices or num_vertices < 0:
            raise HypergraphFormatError("bad-count", f"invalid vertex count {num_vertices!r}")
        n = int(num_vertices)
        edges = [list(e) for e in edges]
        if weights is None:
            weights = [1.0] * len(edges)
        elif len(weights) != len(edges):
            raise HypergraphFormatError("bad-count", "weights length does not match edge count")
        if vertex_weights is None:
            vertex_weights = np.ones(n)
        vw = np.asarray(vertex_weights, dtype=np.float64).copy()
        if vw.shape != (n,):
            raise HypergraphFormatError("bad-count", "vertex_weights length does not match vertex count")
        if not np.all(np.isfinite(vw)) or np.any(vw < 0):
            raise HypergraphFormatError("bad-weight", "vertex weights must be finite and non-negative")

        pins: list[int] = []
        offsets = [0]
        kept_w: list[float] = []
        dropped = 0
        for idx, (e, w) in enumerate(zip(edges, weights)):
            w = float(w)
            if not np.isfinite(w) or w <= 0:
                raise HypergraphFormatError("bad-weight", f"edge {idx} has non-positive weight {w!r}")
            members = set()
            for v in e:
                if int(v) != v or not 0 <= v < n:
                    raise HypergraphFormatError(
                        "vertex-out-of-range", f"edge {idx} references vertex {v!r} outside [0, {n})"
                    )
                members.add(int(v))
            if len(members) < 2:
                dropped += 1
                continue
            pins.extend(sorted(members))
            offsets.append(len(pins))
            kept_w.append(w)
        if dropped:
            logger.warning("dropped %d hyperedge(s) of cardinality < 2", dropped)
        return cls._from_arrays(
            n,
            np.asarray(pins, dtype=np.int64),
            np.asarray(offsets, dtype=np.int64),
            np.asarray(kept_w, dtype=np.float64),
            vw,
            dropped,
        )

    @classmethod
    def _from_arrays(cls, n, pins, offsets, weights, vertex_weights, dropped=0) -> "Hypergraph":
        # trusted constructor: callers guarantee sorted, deduplicated, |e| >= 2
        return cls(
            int(n),
            _frozen(np.ascontiguousarray(pins, dtype=np.int64)),
            _frozen(np.ascontiguousarray(offsets, dtype=np.int64)),
            _frozen(np.ascontiguousarray(weights, dtype=np.float64)),
            _frozen(np.ascontiguousarray(vertex_weights, dtype=np.float64)),
            int(dropped),
        )

    @property
    def num_edges(self) -> int:
        return len(self.offsets) - 1

    @property
    def sizes(self) -> np.ndarray:
        """Cardinality of every hyperedge."""
        return np.diff(self.offsets)

    @property
    def edge_of_pin(self) -> np.ndarray:
        """Hyperedge id for every entry of ``pins``."""
        return np.repeat(np.arange(self.num_edges, dtype=np.int64), self.sizes)

    def edge(self, e: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.pins[self.offsets[e]:self.offsets[e + 1]])

    @property
    def hyperedges(self) -> list[tuple[tuple[int, ...], float]]:
        """``(vertices, weight)`` pairs in edge-id order."""
        return [(self.edge(e), float(self.weights[e])) for e in range(self.num_edges)]

    def incident_edges(self) -> list[list[int]]:
        """Vertex -> incident edge ids (ascending), computed once and cached."""
        if not self._incidence:
            order = np.argsort(self.pins, kind="stable")
            by_vertex = self.edge_of_pin[order]
            counts = np.bincount(self.pins, minlength=self.num_vertices)
            bounds = np.concatenate(([0], np.cumsum(counts))).tolist()
            flat = by_vertex.tolist()
            self._incidence.extend(flat[bounds[v]:bounds[v + 1]] for v in range(self.num_vertices))
        return self._incidence

    def __repr__(self) -> str:
        return f"Hypergraph(|V|={self.num_vertices}, |E|={self.num_edges}, pins={len(self.pins)})"


@dataclass(frozen=True, eq=False)
class ClusterAssignment:
    """Dense 0-based map from fine vertex to cluster id."""

    cluster_of: np.ndarray
    num_clusters: int

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "ClusterAssignment":
        arr = np.asarray(labels, dtype=np.int64).copy()
        if arr.ndim != 1:
            raise ClusterFormatError("bad-shape", "cluster labels must be one-dimensional")
        k = int(arr.max()) + 1 if arr.size else 0
        if arr.size and (arr.min() < 0 or np.unique(arr).size != k):
            raise ClusterFormatError("non-contiguous", "cluster ids must cover [0, num_clusters) exactly")
        return cls(_frozen(arr), k)

    @classmethod
    def identity(cls, n: int) -> "ClusterAssignment":
        return cls(_frozen(np.arange(n, dtype=np.int64)), n)

    def __len__(self) -> int:
        return len(self.cluster_of)

    def members(self) -> list[np.ndarray]:
        order = np.argsort(self.cluster_of, kind="stable")
        bounds = np.cumsum(np.bincount(self.cluster_of, minlength=self.num_clusters))
        return np.split(order, bounds[:-1])


def relabel_by_first_occurrence(labels: np.ndarray) -> np.ndarray:
    """Renumber arbitrary labels densely in order of first appearance."""
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(len(first))
    return rank[inverse.ravel()]


def vertex_degrees(H: Hypergraph) -> np.ndarray:
    """Weighted degree ``d_v``: sum of weights of hyperedges containing ``v``."""
    return np.bincount(
        H.pins, weights=np.repeat(H.weights, H.sizes), minlength=H.num_vertices
    ).astype(np.float64)


# --------------------------------------------------------------------- hMETIS


def _content_lines(stream: TextIO):
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        yield lineno, line


def _number(token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise HypergraphFormatError("malformed-line", f"line {lineno}: non-numeric token {token!r}") from None


def parse_hgr(stream: TextIO | str) -> Hypergraph:
    """Parse an hMETIS hypergraph file.

    Accepts a text stream or a string holding the file contents.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    lines = _content_lines(stream)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise HypergraphFormatError("malformed-header", "empty input") from None
    tokens = header.split()
    if len(tokens) not in (2, 3) or not all(t.lstrip("-").isdigit() for t in tokens):
        raise HypergraphFormatError("malformed-header", f"line {lineno}: expected '|E| |V| [fmt]', got {header!r}")
    num_edges, n = int(tokens[0]), int(tokens[1])
    fmt = int(tokens[2]) if len(tokens) == 3 else None
    if fmt == 0:
        fmt = None
    if fmt not in _VALID_FMTS:
        raise HypergraphFormatError("malformed-header", f"line {lineno}: unsupported fmt {tokens[2]!r}")
    if num_edges <= 0 or n <= 0:
        raise HypergraphFormatError("bad-count", f"line {lineno}: declared counts must be positive")
    has_ew = fmt in (1, 11)
    has_vw = fmt in (10, 11)

    edges, weights = [], []
    for _ in range(num_edges):
        try:
            lineno, line = next(lines)
        except StopIteration:
            raise HypergraphFormatError("truncated", f"expected {num_edges} hyperedge lines") from None
        tokens = line.split()
        if has_ew:
            w = _number(tokens[0], lineno)
            if w <= 0:
                raise HypergraphFormatError("bad-weight", f"line {lineno}: non-positive edge weight {tokens[0]!r}")
            tokens = tokens[1:]
        else:
            w = 1.0
        pins = []
        for t in tokens:
            if not t.isdigit():
                raise HypergraphFormatError("malformed-line", f"line {lineno}: bad vertex index {t!r}")
            v = int(t)
            if not 1 <= v <= n:
                raise HypergraphFormatError(
                    "vertex-out-of-range", f"line {lineno}: vertex index {v} outside [1, {n}]"
                )
            pins.append(v - 1)
        edges.append(pins)
        weights.append(w)

    vertex_weights = None
    if has_vw:
        vertex_weights = []
        for _ in range(n):
            try:
                lineno, line = next(lines)
            except StopIteration:
                raise HypergraphFormatError("truncated", f"expected {n} vertex weight lines") from None
            vw = _number(line.split()[0], lineno)
            if vw < 0:
                raise HypergraphFormatError("bad-weight", f"line {lineno}: negative vertex weight")
            vertex_weights.append(vw)
    for lineno, line in lines:
        raise HypergraphFormatError("trailing-data", f"line {lineno}: unexpected content {line!r}")
    return Hypergraph.from_edges(n, edges, weights, vertex_weights)


def _fmt_num(x: float) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() and abs(x) < 2**53 else repr(x)


def write_hgr(H: Hypergraph, include_weights: bool | None = None, comments: Sequence[str] = ()) -> str:
    """Serialize ``H`` in hMETIS format.

    ``include_weights=None`` picks the smallest fmt code that carries every
    non-unit weight; ``True`` forces fmt 11 and ``False`` writes topology only.
    """
    if include_weights is None:
        ew = bool(np.any(H.weights != 1.0))
        vw = bool(np.any(H.vertex_weights != 1.0))
    else:
        ew = vw = bool(include_weights)
    fmt = {(False, False): "", (True, False): " 1", (False, True): " 10", (True, True): " 11"}[(ew, vw)]
    out = [f"% {c}" for c in comments]
    out.append(f"{H.num_edges} {H.num_vertices}{fmt}")
    pins1 = (H.pins + 1).tolist()
    offs = H.offsets.tolist()
    for e in range(H.num_edges):
        body = " ".join(map(str, pins1[offs[e]:offs[e + 1]]))
        out.append(f"{_fmt_num(H.weights[e])} {body}" if ew else body)
    if vw:
        out.extend(_fmt_num(x) for x in H.vertex_weights)
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------- clusters


def write_clusters(A: ClusterAssignment, comments: Sequence[str] = ()) -> str:
    lines = [f"% {c}" for c in comments]
    lines.extend(map(str, A.cluster_of.tolist()))
    return "\n".join(lines) + "\n"


def read_clusters(stream: TextIO | str, n: int) -> ClusterAssignment:
    """Read one cluster id per line; ``%`` lines are provenance comments."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    labels = []
    for lineno, line in _content_lines(stream):
        try:
            labels.append(int(line))
        except ValueError:
            raise ClusterFormatError("non-integer", f"line {lineno}: {line!r} is not an integer") from None
    if len(labels) != n:
        raise ClusterFormatError("line-count-mismatch", f"line count mismatch: expected {n}, got {len(labels)}")
    return ClusterAssignment.from_labels(labels)
