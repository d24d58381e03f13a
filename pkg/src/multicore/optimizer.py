"""The full pipeline: dendrogram cuts scored by z, argmax selection."""
from __future__ import annotations

import csv
import io
import itertools
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .graph import WeightedGraph
from .hclust import (
    TRANSFORMS,
    Dendrogram,
    Partition,
    average_linkage,
    build_distance_matrix,
    enumerate_partitions,
)
from .metrics import PartitionMetrics, compute_metrics
from .null_model import EnsembleResult, RandomizationConfig, evaluate_ensemble


class NoValidPartition(RuntimeError):
    """No cut has a defined z together with at least one core and one peripheral vertex."""


@dataclass(frozen=True)
class AnalysisResult:
    optimal_cut: int
    optimal_partition: Partition
    optimal_metrics: PartitionMetrics
    optimal_z: float
    z_curve: EnsembleResult
    partitions: tuple[Partition, ...] = field(repr=False)
    dendrogram: Dendrogram = field(repr=False)
    config_echo: dict = field(default_factory=dict)

    def zcurve_csv(self) -> str:
        return zcurve_csv(self.partitions, self.z_curve)


def _fmt(x) -> str:
    return "" if x is None else repr(x)


def zcurve_csv(partitions, ensemble: EnsembleResult) -> str:
    """Undefined values are written as empty fields."""
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["cut_index", "n_cores", "n_periphery", "r_obs", "mean_r", "std_r", "z"])
    for p, s in zip(partitions, ensemble.per_partition):
        out.writerow(
            [p.cut_index, p.n_cores, p.n_periphery]
            + [_fmt(v) for v in (s.r_obs, s.mean_r, s.std_r, s.z)]
        )
    return buf.getvalue()


def select_optimal(partitions, ensemble: EnsembleResult) -> Optional[int]:
    """Index of the valid cut with the largest z; ties go to the smaller cut."""
    best = None
    for i, (p, s) in enumerate(zip(partitions, ensemble.per_partition)):
        if s.z is None or p.n_cores < 1 or p.n_periphery < 1:
            continue
        if best is None or s.z > ensemble.per_partition[best].z:
            best = i
    return best


def find_optimal(
    g: WeightedGraph,
    transform: str = "sim_complement",
    cfg: RandomizationConfig | None = None,
    tie_break: str = "high",
    timings: dict | None = None,
) -> AnalysisResult:
    """Optimal multicore-periphery partition of ``g``.

    Raises NoValidPartition when no cut qualifies. Stage wall times are
    written into ``timings`` when given.
    """
    cfg = cfg or RandomizationConfig()
    if g.n_vertices < 3:
        raise ValueError("need at least 3 vertices")
    clock = {} if timings is None else timings

    t0 = time.perf_counter()
    dm = build_distance_matrix(g, transform)
    t1 = time.perf_counter()
    dend = average_linkage(dm, tie_break=tie_break)
    parts = enumerate_partitions(dend)
    t2 = time.perf_counter()
    ens = evaluate_ensemble(g, parts, cfg)
    t3 = time.perf_counter()
    clock.update(distance=t1 - t0, clustering=t2 - t1, ensemble=t3 - t2)

    best = select_optimal(parts, ens)
    if best is None:
        raise NoValidPartition(f"no cut with defined z under transform {transform!r}")
    echo = {"transform": transform, "tie_break": tie_break, **asdict(cfg)}
    echo.pop("workers")
    return AnalysisResult(
        optimal_cut=parts[best].cut_index,
        optimal_partition=parts[best],
        optimal_metrics=compute_metrics(g, parts[best]),
        optimal_z=ens.per_partition[best].z,
        z_curve=ens,
        partitions=tuple(parts),
        dendrogram=dend,
        config_echo=echo,
    )


def partition_agreement(a: Partition, b: Partition) -> float:
    """Fraction of vertex pairs both partitions classify alike.

    A pair counts as alike when it is "same core" in both, or "not in the
    same core" in both.
    """
    la, lb = a.labels, b.labels
    n = la.size
    if n < 2:
        return 1.0
    iu = np.triu_indices(n, 1)
    same_a = (la[:, None] == la[None, :]) & (la[:, None] >= 0)
    same_b = (lb[:, None] == lb[None, :]) & (lb[:, None] >= 0)
    return float(np.mean(same_a[iu] == same_b[iu]))


@dataclass
class SweepResult:
    results: dict  # transform -> AnalysisResult | NoValidPartition
    agreement: dict  # (transform, transform) -> float

    def succeeded(self) -> dict:
        return {k: v for k, v in self.results.items() if isinstance(v, AnalysisResult)}


def sweep_transforms(
    g: WeightedGraph,
    cfg: RandomizationConfig | None = None,
    tie_break: str = "high",
) -> SweepResult:
    results: dict = {}
    for tr in TRANSFORMS:
        try:
            results[tr] = find_optimal(g, tr, cfg, tie_break=tie_break)
        except NoValidPartition as exc:
            results[tr] = exc
    agreement = {}
    for a, b in itertools.combinations(TRANSFORMS, 2):
        ra, rb = results[a], results[b]
        if isinstance(ra, AnalysisResult) and isinstance(rb, AnalysisResult):
            agreement[(a, b)] = partition_agreement(ra.optimal_partition, rb.optimal_partition)
    return SweepResult(results, agreement)
