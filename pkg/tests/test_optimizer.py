import numpy as np
import pytest

from multicore.graph import WeightedGraph, parse_edge_list
from multicore.hclust import Partition
from multicore.null_model import EnsembleResult, PartitionStats, RandomizationConfig
from multicore.optimizer import (
    NoValidPartition,
    find_optimal,
    partition_agreement,
    select_optimal,
    sweep_transforms,
)
from conftest import TABLE_S1_CORES, TABLE_S1_PERIPHERY, labelled_cores, labelled_periphery

CFG = RandomizationConfig(n_replicas=400, master_seed=11)


def two_triangles():
    # p hangs off a1, q off b1; both links weigh 0.1
    return parse_edge_list(
        "a1 a2 1\na1 a3 1\na2 a3 1\nb1 b2 1\nb1 b3 1\nb2 b3 1\na1 p 0.1\nb1 q 0.1"
    )


def test_two_triangles():
    # expected cut found by tests/oracles.brute_z_curve (independent
    # dendrogram, swap chain and metrics): argmax at the two-triangle cut
    g = two_triangles()
    res = find_optimal(g, cfg=CFG)
    assert res.optimal_cut == 4
    assert labelled_cores(g, res.optimal_partition) == {frozenset({"a1", "a2", "a3"}), frozenset({"b1", "b2", "b3"})}
    assert labelled_periphery(g, res.optimal_partition) == {"p", "q"}


def test_uniform_complete_graph_has_no_valid_partition():
    g = WeightedGraph.from_edges(list("abcde"), [(u, v, 1.0) for u in range(5) for v in range(u + 1, 5)])
    with pytest.raises(NoValidPartition):
        find_optimal(g, cfg=CFG)


def test_too_small():
    with pytest.raises(ValueError):
        find_optimal(parse_edge_list("a b"), cfg=CFG)


def test_selection_rules():
    parts = [Partition(i, np.array(lab)) for i, lab in enumerate(
        [[-1, -1, -1], [0, 0, -1], [0, 0, -1], [0, 0, 0]])]
    stats = [PartitionStats(None, None, None, None, 0),
             PartitionStats(1.0, 0.0, 1.0, 3.0, 5),
             PartitionStats(1.0, 0.0, 1.0, 3.0, 5),
             PartitionStats(1.0, 0.0, 1.0, 9.0, 5)]  # m = 0: never selected
    ens = EnsembleResult(tuple(stats), 5, np.zeros(5), np.zeros(5))
    assert select_optimal(parts, ens) == 1


def test_result_invariants(karate_graph):
    res = find_optimal(karate_graph, cfg=CFG)
    valid = [s.z for p, s in zip(res.partitions, res.z_curve.per_partition)
             if s.z is not None and p.n_cores >= 1 and p.n_periphery >= 1]
    assert res.optimal_z == max(valid)
    p = res.optimal_partition
    assert p.n_cores >= 1 and p.n_periphery >= 1 and min(p.core_sizes) >= 2
    assert res.config_echo["transform"] == "sim_complement"
    assert res.config_echo["master_seed"] == 11


def test_karate_table_s1(karate_graph):
    res = find_optimal(karate_graph, cfg=RandomizationConfig(n_replicas=1000, master_seed=42))
    assert labelled_cores(karate_graph, res.optimal_partition) == {frozenset(c) for c in TABLE_S1_CORES}
    assert labelled_periphery(karate_graph, res.optimal_partition) == TABLE_S1_PERIPHERY


def test_rerun_is_identical(karate_graph):
    a = find_optimal(karate_graph, cfg=CFG)
    b = find_optimal(karate_graph, cfg=CFG)
    assert a.zcurve_csv() == b.zcurve_csv()
    assert a.optimal_partition == b.optimal_partition


@pytest.mark.parametrize("alpha", [0.5, 3, 1000])
def test_decision_scale_invariant(karate_graph, alpha):
    a = find_optimal(karate_graph, cfg=CFG)
    b = find_optimal(karate_graph.scaled(alpha), cfg=CFG)
    assert (a.optimal_cut, a.optimal_z, a.optimal_metrics.r) == (b.optimal_cut, b.optimal_z, b.optimal_metrics.r)
    assert a.optimal_partition == b.optimal_partition


def test_agreement():
    a = Partition(0, np.array([0, 0, 1, 1, -1]))
    assert partition_agreement(a, a) == 1.0
    b = Partition(0, np.array([0, 0, 0, 0, -1]))
    # pairs (0,2),(0,3),(1,2),(1,3) differ out of 10
    assert partition_agreement(a, b) == pytest.approx(0.6)


def test_sweep_order_isomorphic_case():
    # weights chosen so every transform yields the same merge order
    g = parse_edge_list("a b 10\nb c 9\na c 8\nd e 7\ne f 6\nd f 5\nc g 1\nf h 1.5\nb d 1.2")
    sw = sweep_transforms(g, CFG)
    res = sw.succeeded()
    assert set(res) == {"sim_complement", "inverse_weight", "max_minus"}
    dends = {tr: [m.members for m in r.dendrogram.merges] for tr, r in res.items()}
    assert dends["sim_complement"] == dends["inverse_weight"] == dends["max_minus"]
    parts = [r.optimal_partition for r in res.values()]
    assert parts[0] == parts[1] == parts[2]
    assert all(v == 1.0 for v in sw.agreement.values())


def test_sweep_k3_all_fail():
    sw = sweep_transforms(parse_edge_list("a b\nb c\na c"), CFG)
    assert all(isinstance(v, NoValidPartition) for v in sw.results.values())
    assert sw.agreement == {}
