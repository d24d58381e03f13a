"""Degree-preserving randomization and per-partition z-scores.

Replicas come from weight-carrying double edge swaps: edges ``(a, b, w1)``
and ``(c, d, w2)`` become ``(a, d, w1)`` and ``(c, b, w2)`` unless that
creates a self-loop or a parallel edge. Binary degrees and the multiset of
weights are preserved exactly; vertex strengths are not (their drift is
reported per replica).

Replica ``i`` draws its randomness from ``SeedSequence(master_seed,
spawn_key=(i,))`` and results are aggregated in replica order, so the
output does not depend on how replicas are spread over workers.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numba
import numpy as np

from .graph import WeightedGraph, strengths
from .hclust import Partition
from .metrics import pair_capacities

STD_FLOOR = 1e-12
_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class RandomizationConfig:
    n_replicas: int = 1000
    swap_factor: float = 10.0
    master_seed: int = 0
    # threads evaluating replicas; results are identical for any value
    workers: int = 1
    # False: a fresh ensemble for every partition (n_partitions times the cost)
    shared_replicas: bool = True

    def __post_init__(self):
        if self.n_replicas < 2:
            raise ValueError("n_replicas must be >= 2")
        if not self.swap_factor > 0:
            raise ValueError("swap_factor must be > 0")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def n_attempts(self, n_edges: int) -> int:
        return math.ceil(self.swap_factor * n_edges)


@dataclass(frozen=True)
class PartitionStats:
    r_obs: Optional[float]
    mean_r: Optional[float]
    std_r: Optional[float]
    z: Optional[float]
    n_valid_replicas: int


@dataclass(frozen=True)
class EnsembleResult:
    per_partition: tuple[PartitionStats, ...]
    n_replicas: int
    accepted_swaps: np.ndarray = field(repr=False)
    strength_l1_drift: np.ndarray = field(repr=False)

    @property
    def z(self) -> list[Optional[float]]:
        return [s.z for s in self.per_partition]

    def diagnostics_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["replica_index", "accepted_swaps", "strength_l1_drift"])
        for i, (a, d) in enumerate(zip(self.accepted_swaps.tolist(), self.strength_l1_drift.tolist())):
            out.writerow([i, a, repr(d)])
        return buf.getvalue()


def z_score(r_obs, mean_r, std_r) -> Optional[float]:
    if r_obs is None or mean_r is None or std_r is None or not std_r >= STD_FLOOR:
        return None
    return (r_obs - mean_r) / std_r


@numba.njit(nogil=True, cache=True)
def _swap_chain(src, dst, n, e1s, e2s, flips):
    """Run the swap attempts in place on ``src``/``dst``; returns accepted count."""
    bits = np.zeros((n * n + 7) // 8, dtype=np.uint8)
    for e in range(src.size):
        for k in (src[e] * n + dst[e], dst[e] * n + src[e]):
            bits[k >> 3] |= np.uint8(1 << (k & 7))
    accepted = 0
    for t in range(e1s.size):
        e1, e2 = e1s[t], e2s[t]
        a, b = src[e1], dst[e1]
        if flips[t]:
            c, d = dst[e2], src[e2]
        else:
            c, d = src[e2], dst[e2]
        if a == d or c == b:
            continue
        k1 = a * n + d
        k2 = c * n + b
        if (bits[k1 >> 3] >> (k1 & 7)) & 1 or (bits[k2 >> 3] >> (k2 & 7)) & 1:
            continue
        for k in (a * n + b, b * n + a, c * n + d, d * n + c):
            bits[k >> 3] &= np.uint8(~(1 << (k & 7)) & 0xFF)
        for k in (a * n + d, d * n + a, c * n + b, b * n + c):
            bits[k >> 3] |= np.uint8(1 << (k & 7))
        src[e1], dst[e1] = a, d
        src[e2], dst[e2] = c, b
        accepted += 1
    return accepted


@numba.njit(nogil=True, cache=True)
def _ratios(src, dst, w, labels, core_cap, peri_cap, out):
    """Cores-periphery ratio of every partition row in ``labels``; NaN if undefined."""
    for p in range(labels.shape[0]):
        lab = labels[p]
        C = 0.0
        P = 0.0
        for e in range(src.size):
            a = lab[src[e]]
            b = lab[dst[e]]
            if a < 0 or b < 0:
                P += w[e]
            elif a == b:
                C += w[e]
        if core_cap[p] > 0 and peri_cap[p] > 0 and P > 0:
            out[p] = (C / P) * (peri_cap[p] / core_cap[p])
        else:
            out[p] = np.nan


def _draws(rng: np.random.Generator, n_edges: int, n_attempts: int):
    e1 = rng.integers(0, n_edges, n_attempts)
    e2 = rng.integers(0, n_edges - 1, n_attempts)
    e2 += e2 >= e1
    flips = rng.integers(0, 2, n_attempts).astype(np.bool_)
    return e1, e2, flips


def _rng(master_seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(master_seed & _U64, spawn_key=key))


def _swapped_edges(g: WeightedGraph, n_attempts: int, rng: np.random.Generator):
    src = np.array(g.src, dtype=np.int64)
    dst = np.array(g.dst, dtype=np.int64)
    if g.n_edges < 2 or n_attempts <= 0:
        return src, dst, 0
    accepted = _swap_chain(src, dst, g.n_vertices, *_draws(rng, g.n_edges, n_attempts))
    return src, dst, int(accepted)


def randomize(g: WeightedGraph, n_attempts: int, seed: int | np.random.Generator) -> WeightedGraph:
    """One degree-preserving replica of ``g`` after ``n_attempts`` swap attempts."""
    rng = seed if isinstance(seed, np.random.Generator) else _rng(int(seed))
    src, dst, _ = _swapped_edges(g, n_attempts, rng)
    return g.with_edges(src, dst, g.weight)


def iter_replicas(g: WeightedGraph, cfg: RandomizationConfig) -> Iterator[WeightedGraph]:
    """The replicas a shared ensemble under ``cfg`` is evaluated on, in order."""
    n_attempts = cfg.n_attempts(g.n_edges)
    for i in range(cfg.n_replicas):
        yield randomize(g, n_attempts, _rng(cfg.master_seed, i))


def _label_matrix(partitions: Sequence[Partition]):
    labels = np.stack([p.labels for p in partitions]).astype(np.int64)
    caps = np.array([pair_capacities(p.core_sizes, p.n_periphery) for p in partitions])
    return np.ascontiguousarray(labels), caps[:, 0].copy(), caps[:, 1].copy()


def _chunks(n: int, k: int) -> list[range]:
    step = max(1, math.ceil(n / k))
    return [range(s, min(n, s + step)) for s in range(0, n, step)]


def _run(tasks: list, fn, workers: int):
    if workers == 1 or len(tasks) == 1:
        for t in tasks:
            fn(t)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(fn, tasks))


def evaluate_ensemble(
    g: WeightedGraph,
    partitions: Sequence[Partition],
    cfg: RandomizationConfig,
) -> EnsembleResult:
    """z-score of every partition against a degree-preserving null ensemble.

    With ``cfg.shared_replicas`` each replica graph scores all partitions;
    otherwise partition ``p`` gets its own replicas seeded with key ``(p, i)``.
    """
    labels, core_cap, peri_cap = _label_matrix(partitions)
    n_parts, n_rep = labels.shape[0], cfg.n_replicas
    n_attempts = cfg.n_attempts(g.n_edges)
    w = np.ascontiguousarray(g.weight)
    s0 = strengths(g)

    r_obs = np.empty(n_parts)
    _ratios(g.src, g.dst, w, labels, core_cap, peri_cap, r_obs)

    R = np.empty((n_rep, n_parts))
    accepted = np.zeros(n_rep, dtype=np.int64)
    drift = np.zeros(n_rep)

    def replica(i: int, key: tuple, rows: slice):
        src, dst, acc = _swapped_edges(g, n_attempts, _rng(cfg.master_seed, *key))
        _ratios(src, dst, w, labels[rows], core_cap[rows], peri_cap[rows], R[i, rows])
        return src, dst, acc

    if cfg.shared_replicas:
        def work(block: range):
            for i in block:
                src, dst, acc = replica(i, (i,), slice(None))
                s = np.zeros_like(s0)
                np.add.at(s, src, w)
                np.add.at(s, dst, w)
                accepted[i] = acc
                drift[i] = np.abs(s - s0).sum()

        _run(_chunks(n_rep, cfg.workers), work, cfg.workers)
    else:
        def work(block: range):
            for p in block:
                for i in range(n_rep):
                    replica(i, (p, i), slice(p, p + 1))

        _run(_chunks(n_parts, cfg.workers), work, cfg.workers)

    stats = []
    for p in range(n_parts):
        col = R[:, p]
        col = col[~np.isnan(col)]
        obs = None if np.isnan(r_obs[p]) else float(r_obs[p])
        mean = float(col.mean()) if col.size else None
        std = float(col.std(ddof=1)) if col.size >= 2 else None
        stats.append(PartitionStats(obs, mean, std, z_score(obs, mean, std), int(col.size)))
    return EnsembleResult(tuple(stats), n_rep, accepted, drift)
