"""Weighted undirected graphs: construction, validation, edge-list I/O."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Base class for edge-list and graph validation errors."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class MalformedLine(GraphError):
    pass


class NonPositiveWeight(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected simple graph with strictly positive edge weights.

    Vertex ``i`` carries label ``vertex_labels[i]``. Edges are stored as
    parallel arrays with ``src < dst`` and sorted by ``(src, dst)``.
    """

    vertex_labels: tuple[str, ...]
    src: np.ndarray
    dst: np.ndarray
    weight: np.ndarray
    _adjacency: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        src = np.asarray(self.src, dtype=np.int64)
        dst = np.asarray(self.dst, dtype=np.int64)
        w = np.asarray(self.weight, dtype=np.float64)
        if not (src.shape == dst.shape == w.shape) or src.ndim != 1:
            raise GraphError("edge arrays must be 1-d and equally long")
        n = len(self.vertex_labels)
        if len(set(self.vertex_labels)) != n:
            raise GraphError("vertex labels must be unique")
        if src.size:
            if src.min() < 0 or max(src.max(), dst.max()) >= n:
                raise GraphError("edge endpoint out of range")
            if np.any(src == dst):
                raise SelfLoop("self-loop in edge arrays")
            if not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise NonPositiveWeight("weights must be finite and > 0")
        lo, hi = np.minimum(src, dst), np.maximum(src, dst)
        order = np.lexsort((hi, lo))
        lo, hi, w = lo[order], hi[order], w[order]
        if lo.size > 1 and np.any((lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])):
            raise DuplicateEdge("parallel edges in edge arrays")
        for arr in (lo, hi, w):
            arr.setflags(write=False)
        object.__setattr__(self, "vertex_labels", tuple(self.vertex_labels))
        object.__setattr__(self, "src", lo)
        object.__setattr__(self, "dst", hi)
        object.__setattr__(self, "weight", w)

        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for u, v, x in zip(lo.tolist(), hi.tolist(), w.tolist()):
            adj[u].append((v, x))
            adj[v].append((u, x))
        object.__setattr__(self, "_adjacency", tuple(tuple(a) for a in adj))

    @classmethod
    def from_edges(cls, labels: Sequence[str], edges: Iterable[tuple[int, int, float]]):
        edges = list(edges)
        if not edges:
            z = np.zeros(0, dtype=np.int64)
            return cls(tuple(labels), z, z.copy(), np.zeros(0))
        u, v, w = zip(*edges)
        return cls(tuple(labels), np.array(u), np.array(v), np.array(w, dtype=float))

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_labels)

    @property
    def n_edges(self) -> int:
        return int(self.src.size)

    @property
    def adjacency(self) -> tuple[tuple[tuple[int, float], ...], ...]:
        return self._adjacency

    def edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self.src.tolist(), self.dst.tolist(), self.weight.tolist()))

    def weight_matrix(self) -> np.ndarray:
        W = np.zeros((self.n_vertices, self.n_vertices))
        W[self.src, self.dst] = self.weight
        W[self.dst, self.src] = self.weight
        return W

    def scaled(self, alpha: float) -> "WeightedGraph":
        return WeightedGraph(self.vertex_labels, self.src, self.dst, self.weight * alpha)

    def with_edges(self, src, dst, weight) -> "WeightedGraph":
        """Same vertex set, new edge arrays."""
        return WeightedGraph(self.vertex_labels, src, dst, weight)

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.vertex_labels == other.vertex_labels
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and np.array_equal(self.weight, other.weight)
        )

    __hash__ = None


@dataclass(frozen=True)
class GraphStats:
    n_vertices: int
    n_edges: int
    total_weight: float
    degree_sequence: tuple[int, ...]
    strength_sequence: tuple[float, ...]


def degrees(g: WeightedGraph) -> np.ndarray:
    return np.bincount(np.concatenate([g.src, g.dst]), minlength=g.n_vertices)


def strengths(g: WeightedGraph) -> np.ndarray:
    s = np.zeros(g.n_vertices)
    np.add.at(s, g.src, g.weight)
    np.add.at(s, g.dst, g.weight)
    return s


def graph_stats(g: WeightedGraph) -> GraphStats:
    return GraphStats(
        n_vertices=g.n_vertices,
        n_edges=g.n_edges,
        total_weight=float(g.weight.sum()),
        degree_sequence=tuple(int(d) for d in degrees(g)),
        strength_sequence=tuple(float(s) for s in strengths(g)),
    )


VERTEX_HEADER = "# vertices:"


def _split(line: str, fmt: str) -> list[str]:
    if fmt == "whitespace":
        return line.split()
    if fmt == "csv":
        return [f.strip() for f in next(csv.reader([line]))]
    raise ValueError(f"unknown edge-list format {fmt!r}")


def parse_edge_list(text: str | io.TextIOBase, format: str = "whitespace") -> WeightedGraph:
    """Parse ``label_u label_v [weight]`` lines into a graph.

    Labels get dense ids in order of first appearance. Blank lines and
    lines starting with ``#`` are skipped, except a ``# vertices:`` header
    which declares labels (and their ids) up front; the serializer writes
    one so that isolated vertices and id order survive a round trip.
    A missing weight means 1.0.
    """
    if not isinstance(text, str):
        text = text.read()
    ids: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    edges = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith(VERTEX_HEADER):
            for label in line[len(VERTEX_HEADER):].split():
                ids.setdefault(label, len(ids))
            continue
        if not line or line.startswith("#"):
            continue
        fields = _split(line, format)
        if len(fields) not in (2, 3) or not all(fields[:2]):
            raise MalformedLine(f"expected 'u v [weight]', got {raw!r}", line_no)
        a, b = fields[0], fields[1]
        if len(fields) == 3:
            try:
                w = float(fields[2])
            except ValueError:
                raise MalformedLine(f"bad weight {fields[2]!r}", line_no) from None
        else:
            w = 1.0
        if math.isnan(w) or math.isinf(w):
            raise MalformedLine(f"non-finite weight {fields[2]!r}", line_no)
        if w <= 0:
            raise NonPositiveWeight(f"weight must be > 0, got {w!r}", line_no)
        if a == b:
            raise SelfLoop(f"self-loop on {a!r}", line_no)
        u = ids.setdefault(a, len(ids))
        v = ids.setdefault(b, len(ids))
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"pair ({a}, {b}) already listed", line_no)
        seen.add(key)
        edges.append((key[0], key[1], w))
    return WeightedGraph.from_edges(list(ids), edges)


def read_edge_list(path, format: str | None = None) -> WeightedGraph:
    path = str(path)
    if format is None:
        format = "csv" if path.endswith(".csv") else "whitespace"
    with open(path, encoding="utf-8") as f:
        return parse_edge_list(f.read(), format)


def serialize_edge_list(g: WeightedGraph) -> str:
    """Canonical form: vertex header, then one edge per line sorted by ids.

    Weights are written with ``repr`` so they parse back bit-identically.
    """
    labels = g.vertex_labels
    head = VERTEX_HEADER + "".join(f" {x}" for x in labels) + "\n"
    return head + "".join(f"{labels[u]} {labels[v]} {w!r}\n" for u, v, w in g.edges())
