"""Distance transforms, average-linkage dendrogram, and dendrogram cuts."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .graph import WeightedGraph

TRANSFORMS = ("sim_complement", "inverse_weight", "max_minus")
TIE_BREAKS = ("high", "low")

# Candidate merge distances closer than this (relative) count as tied.
TIE_RTOL = 1e-12


class DegenerateWeights(ValueError):
    pass


@dataclass(frozen=True)
class DistanceMatrix:
    d: np.ndarray
    transform: str

    @property
    def n(self) -> int:
        return self.d.shape[0]


def build_distance_matrix(g: WeightedGraph, transform: str = "sim_complement") -> DistanceMatrix:
    """Turn edge weights (similarities) into vertex-pair distances.

    Every transform is strictly decreasing in the weight. Non-adjacent
    pairs get a finite sentinel above every edge distance:

    ``sim_complement``  1 - w/w_max, non-edges 1
    ``inverse_weight``  1/w, non-edges 10 * max(1/w)
    ``max_minus``       (w_max - w)/w_max, non-edges 1 + 1/w_max
    """
    if transform not in TRANSFORMS:
        raise ValueError(f"unknown transform {transform!r}; expected one of {TRANSFORMS}")
    n = g.n_vertices
    if n < 2:
        raise ValueError("need at least 2 vertices")
    w = g.weight
    w_max = float(w.max()) if w.size else 0.0
    if not w_max > 0:
        raise DegenerateWeights("maximum edge weight is not positive")

    if transform == "sim_complement":
        edge_d, absent = 1.0 - w / w_max, 1.0
    elif transform == "inverse_weight":
        edge_d = 1.0 / w
        absent = 10.0 * float(edge_d.max())
    else:
        edge_d, absent = (w_max - w) / w_max, 1.0 + 1.0 / w_max

    d = np.full((n, n), absent, dtype=np.float64)
    d[g.src, g.dst] = edge_d
    d[g.dst, g.src] = edge_d
    np.fill_diagonal(d, 0.0)
    d.setflags(write=False)
    return DistanceMatrix(d, transform)


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    height: float
    members: frozenset


@dataclass(frozen=True)
class Dendrogram:
    """Merges in order; node ref ``i < n`` is leaf ``i``, ``n + t`` is merge ``t``."""

    n: int
    merges: tuple[Merge, ...]

    @property
    def heights(self) -> np.ndarray:
        return np.array([m.height for m in self.merges])

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["merge_index", "left_ref", "right_ref", "height", "member_count"])
        for t, m in enumerate(self.merges):
            out.writerow([t, m.left, m.right, repr(m.height), len(m.members)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "Dendrogram":
        rows = list(csv.DictReader(io.StringIO(text)))
        n = len(rows) + 1
        members: dict[int, frozenset] = {i: frozenset([i]) for i in range(n)}
        merges = []
        for t, row in enumerate(rows):
            a, b = int(row["left_ref"]), int(row["right_ref"])
            members[n + t] = members[a] | members[b]
            merges.append(Merge(a, b, float(row["height"]), members[n + t]))
        return cls(n, tuple(merges))


def _pick(cands: np.ndarray, mins: np.ndarray, tie_break: str) -> tuple[int, int]:
    # cands: (k, 2) slot pairs; order each pair by min vertex id, then pick
    # the lexicographically smallest/largest.
    a, b = mins[cands[:, 0]], mins[cands[:, 1]]
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    order = np.lexsort((hi, lo))
    i = order[-1] if tie_break == "high" else order[0]
    s, t = cands[i]
    return (s, t) if mins[s] < mins[t] else (t, s)


def average_linkage(dm: DistanceMatrix, tie_break: str = "high") -> Dendrogram:
    """Agglomerative clustering under average linkage.

    Each step merges the pair of clusters with the smallest mean leaf-to-leaf
    distance. Pairs within ``TIE_RTOL`` of the minimum are tied; each tied
    pair is keyed by its two clusters' smallest vertex ids (smaller first)
    and ``tie_break`` picks the largest (``"high"``) or smallest (``"low"``)
    key.
    """
    if tie_break not in TIE_BREAKS:
        raise ValueError(f"tie_break must be one of {TIE_BREAKS}")
    n = dm.n
    # sums[s, t] = total leaf distance between the clusters in slots s and t
    sums = np.array(dm.d, dtype=np.float64)
    sizes = np.ones(n)
    mins = np.arange(n)
    refs = list(range(n))
    members = [frozenset([i]) for i in range(n)]
    active = np.ones(n, dtype=bool)
    merges = []
    eps = TIE_RTOL * max(1.0, float(np.max(dm.d)))

    for t in range(n - 1):
        idx = np.flatnonzero(active)
        avg = sums[np.ix_(idx, idx)] / np.outer(sizes[idx], sizes[idx])
        iu, ju = np.triu_indices(idx.size, 1)
        vals = avg[iu, ju]
        best = vals.min()
        tied = vals <= best + eps
        cands = np.column_stack([idx[iu[tied]], idx[ju[tied]]])
        s, u = _pick(cands, mins, tie_break)
        height = float(sums[s, u] / (sizes[s] * sizes[u]))

        merged = members[s] | members[u]
        merges.append(Merge(refs[s], refs[u], height, merged))
        # new cluster lives in slot s
        sums[s, :] += sums[u, :]
        sums[:, s] += sums[:, u]
        sums[s, s] = 0.0
        sizes[s] += sizes[u]
        mins[s] = min(mins[s], mins[u])
        refs[s] = n + t
        members[s] = merged
        active[u] = False

    dend = Dendrogram(n, tuple(merges))
    assert np.all(np.diff(dend.heights) >= -eps), "average linkage heights must not decrease"
    return dend


@dataclass(frozen=True)
class Partition:
    """Cores (clusters of size >= 2) plus periphery (singletons) at one cut.

    ``labels[v]`` is the core id of vertex ``v`` or -1 for periphery. Core
    ids run by descending size, ties by smallest member id.
    """

    cut_index: int
    labels: np.ndarray

    @classmethod
    def from_clusters(cls, cut_index: int, n: int, clusters: Sequence[frozenset]) -> "Partition":
        cores = sorted((c for c in clusters if len(c) >= 2), key=lambda c: (-len(c), min(c)))
        labels = np.full(n, -1, dtype=np.int64)
        for k, c in enumerate(cores):
            labels[list(c)] = k
        labels.setflags(write=False)
        return cls(cut_index, labels)

    @property
    def n_vertices(self) -> int:
        return self.labels.size

    @cached_property
    def cores(self) -> tuple[frozenset, ...]:
        k = self.n_cores
        return tuple(frozenset(np.flatnonzero(self.labels == i).tolist()) for i in range(k))

    @property
    def core_assignment(self) -> dict[int, int]:
        return {int(v): int(c) for v, c in enumerate(self.labels) if c >= 0}

    @cached_property
    def periphery(self) -> frozenset:
        return frozenset(np.flatnonzero(self.labels < 0).tolist())

    @property
    def core_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cores)

    @property
    def n_cores(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    @property
    def n_periphery(self) -> int:
        return int(np.count_nonzero(self.labels < 0))

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.cut_index == other.cut_index and np.array_equal(self.labels, other.labels)

    __hash__ = None


def enumerate_partitions(dend: Dendrogram) -> list[Partition]:
    """One partition per cut 0..n-1; cut t applies the first t merges."""
    n = dend.n
    clusters: dict[int, frozenset] = {i: frozenset([i]) for i in range(n)}
    out = [Partition.from_clusters(0, n, list(clusters.values()))]
    for t, m in enumerate(dend.merges):
        del clusters[m.left], clusters[m.right]
        clusters[n + t] = m.members
        out.append(Partition.from_clusters(t + 1, n, list(clusters.values())))
    return out
