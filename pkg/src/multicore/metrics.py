"""Core and periphery densities and the cores-periphery ratio of a partition."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import WeightedGraph
from .hclust import Partition


@dataclass(frozen=True)
class PartitionMetrics:
    """Densities are ``None`` when their pair capacity is zero; ``r`` is
    ``None`` when either density is undefined or the periphery density is 0.

    ``W_intercore`` is weight on edges joining two different cores. It is
    counted in neither ``C`` nor ``P``.
    """

    C: float
    P: float
    W_intercore: float
    core_pair_capacity: float
    periphery_pair_capacity: float
    density_cores: Optional[float]
    density_periphery: Optional[float]
    r: Optional[float]


def pair_capacities(core_sizes, n_periphery: int) -> tuple[float, float]:
    sizes = np.asarray(core_sizes, dtype=np.float64)
    m = float(n_periphery)
    core_cap = float(np.sum(sizes * (sizes - 1) / 2))
    peri_cap = m * (m - 1) / 2 + m * float(sizes.sum())
    return core_cap, peri_cap


def _edge_classes(g: WeightedGraph, labels: np.ndarray):
    a, b = labels[g.src], labels[g.dst]
    intra = (a >= 0) & (a == b)
    peri = (a < 0) | (b < 0)
    return intra, peri


def core_weight(g: WeightedGraph, p: Partition) -> float:
    intra, _ = _edge_classes(g, p.labels)
    return float(g.weight[intra].sum())


def periphery_weight(g: WeightedGraph, p: Partition) -> float:
    _, peri = _edge_classes(g, p.labels)
    return float(g.weight[peri].sum())


def ratio(C: float, P: float, core_cap: float, peri_cap: float) -> Optional[float]:
    if core_cap <= 0 or peri_cap <= 0 or P <= 0:
        return None
    # C/P first: exact under weight scaling whenever the scaled sums are
    return (C / P) * (peri_cap / core_cap)


def compute_metrics(g: WeightedGraph, p: Partition) -> PartitionMetrics:
    intra, peri = _edge_classes(g, p.labels)
    C = float(g.weight[intra].sum())
    P = float(g.weight[peri].sum())
    inter = float(g.weight[~(intra | peri)].sum())
    core_cap, peri_cap = pair_capacities(p.core_sizes, p.n_periphery)
    return PartitionMetrics(
        C=C,
        P=P,
        W_intercore=inter,
        core_pair_capacity=core_cap,
        periphery_pair_capacity=peri_cap,
        density_cores=C / core_cap if core_cap > 0 else None,
        density_periphery=P / peri_cap if peri_cap > 0 else None,
        r=ratio(C, P, core_cap, peri_cap),
    )
