"""Multicore-periphery partitions of weighted networks."""
from .graph import WeightedGraph, graph_stats, parse_edge_list, read_edge_list, serialize_edge_list
from .hclust import Partition, average_linkage, build_distance_matrix, enumerate_partitions
from .metrics import PartitionMetrics, compute_metrics
from .null_model import EnsembleResult, RandomizationConfig, evaluate_ensemble, randomize
from .optimizer import AnalysisResult, NoValidPartition, find_optimal, sweep_transforms

__all__ = [
    "AnalysisResult", "EnsembleResult", "NoValidPartition", "Partition", "PartitionMetrics",
    "RandomizationConfig", "WeightedGraph", "average_linkage", "build_distance_matrix",
    "compute_metrics", "enumerate_partitions", "evaluate_ensemble", "find_optimal",
    "graph_stats", "parse_edge_list", "randomize", "read_edge_list", "serialize_edge_list",
    "sweep_transforms",
]
__version__ = "0.1.0"
