"""Graphs with a planted multicore-periphery structure, for recovery tests."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import WeightedGraph
from .hclust import Partition


@dataclass(frozen=True)
class PlantedConfig:
    n_cores: int = 3
    core_size: int = 5
    n_periphery: int = 10
    # mean intra-core weight / mean periphery weight
    separation: float = 5.0
    # edges each peripheral vertex sends to core vertices, one per core
    # (distinct cores, chosen uniformly) while cores last
    periphery_degree: int = 2
    # chance that a pair of peripheral vertices is linked
    p_periphery: float = 0.02
    # chance that a pair of vertices in different cores is linked (low weight)
    p_intercore: float = 0.02
    jitter: float = 0.2


def planted_graph(cfg: PlantedConfig, seed: int) -> tuple[WeightedGraph, Partition]:
    """Complete, heavy cores plus a sparse, light periphery.

    Intra-core weights are ``separation * U(1 - jitter, 1 + jitter)``; every
    other edge weighs ``U(1 - jitter, 1 + jitter)``. Returns the graph and the
    planted partition (cut index -1).
    """
    rng = np.random.default_rng(seed)
    q, s, m = cfg.n_cores, cfg.core_size, cfg.n_periphery
    n = q * s + m
    core_of = np.repeat(np.arange(q), s)
    lo, hi = 1 - cfg.jitter, 1 + cfg.jitter
    edges: dict[tuple[int, int], float] = {}

    for c in range(q):
        vs = range(c * s, (c + 1) * s)
        for u in vs:
            for v in vs:
                if u < v:
                    edges[(u, v)] = cfg.separation * rng.uniform(lo, hi)
    for u in range(q * s):
        for v in range(u + 1, q * s):
            if core_of[u] != core_of[v] and rng.random() < cfg.p_intercore:
                edges[(u, v)] = rng.uniform(lo, hi)
    for u in range(q * s, n):
        targets = rng.permutation(q)[: cfg.periphery_degree]
        for c in targets:
            v = int(c) * s + int(rng.integers(s))
            edges[(v, u)] = rng.uniform(lo, hi)
        for v in range(u + 1, n):
            if rng.random() < cfg.p_periphery:
                edges[(u, v)] = rng.uniform(lo, hi)

    labels = [f"v{i}" for i in range(n)]
    g = WeightedGraph.from_edges(labels, [(u, v, w) for (u, v), w in sorted(edges.items())])
    clusters = [frozenset(range(c * s, (c + 1) * s)) for c in range(q)]
    clusters += [frozenset([v]) for v in range(q * s, n)]
    return g, Partition.from_clusters(-1, n, clusters)


def same_structure(a: Partition, b: Partition) -> bool:
    """Equal cores (as vertex sets) and equal periphery, ignoring core ids and cut."""
    return set(a.cores) == set(b.cores) and a.periphery == b.periphery
