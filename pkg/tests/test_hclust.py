import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from multicore.graph import parse_edge_list
from multicore.hclust import (
    TRANSFORMS,
    Dendrogram,
    DistanceMatrix,
    average_linkage,
    build_distance_matrix,
    enumerate_partitions,
)
from conftest import TABLE_S1_CORES, TABLE_S1_PERIPHERY, labelled_cores, labelled_periphery
from oracles import brute_average_linkage
from strategies import weighted_graphs


def dm(rows):
    return DistanceMatrix(np.array(rows, dtype=float), "sim_complement")


def test_sim_complement_triangle():
    g = parse_edge_list("a b 3\nb c 1\na c 2")
    d = build_distance_matrix(g, "sim_complement").d
    assert d[0, 1] == 0
    assert np.isclose(d[1, 2], 2 / 3)
    assert np.isclose(d[0, 2], 1 / 3)


def test_absent_pairs_sentinels():
    g = parse_edge_list("a b 2\nc d 4")
    assert build_distance_matrix(g, "sim_complement").d[0, 2] == 1.0
    assert build_distance_matrix(g, "inverse_weight").d[0, 2] == 10 * 0.5
    assert build_distance_matrix(g, "max_minus").d[0, 2] == 1 + 1 / 4
    # w_max pair at distance 0 under the complement transforms
    assert build_distance_matrix(g, "max_minus").d[2, 3] == 0


@pytest.mark.parametrize("transform", TRANSFORMS)
@given(g=weighted_graphs(min_n=2))
def test_distance_matrix_invariants(transform, g):
    if g.n_edges == 0:
        return
    d = build_distance_matrix(g, transform).d
    assert np.array_equal(d, d.T)
    assert np.all(np.diag(d) == 0)
    assert np.all(np.isfinite(d)) and np.all(d >= 0)
    W = g.weight_matrix()
    off = ~np.eye(g.n_vertices, dtype=bool)
    edge, absent = off & (W > 0), off & (W == 0)
    if absent.any():
        assert d[absent].min() > d[edge].max()
    if transform == "sim_complement":
        assert np.all(d[edge] < 1) and np.all(d[absent] == 1)


def test_unknown_transform():
    with pytest.raises(ValueError):
        build_distance_matrix(parse_edge_list("a b"), "cosine")


def test_two_points():
    dend = average_linkage(dm([[0, 0.7], [0.7, 0]]))
    assert len(dend.merges) == 1
    assert dend.merges[0].height == 0.7


def test_two_pairs_low_tie_break():
    d = [[0, 1, 10, 10], [1, 0, 10, 10], [10, 10, 0, 1], [10, 10, 1, 0]]
    dend = average_linkage(dm(d), tie_break="low")
    got = [(set(m.members), m.height) for m in dend.merges]
    assert got == [({0, 1}, 1), ({2, 3}, 1), ({0, 1, 2, 3}, 10)]


def test_two_pairs_high_tie_break():
    d = [[0, 1, 10, 10], [1, 0, 10, 10], [10, 10, 0, 1], [10, 10, 1, 0]]
    dend = average_linkage(dm(d), tie_break="high")
    got = [(set(m.members), m.height) for m in dend.merges]
    assert got == [({2, 3}, 1), ({0, 1}, 1), ({0, 1, 2, 3}, 10)]


def test_node_refs():
    d = [[0, 1, 10, 10], [1, 0, 10, 10], [10, 10, 0, 1], [10, 10, 1, 0]]
    dend = average_linkage(dm(d), tie_break="low")
    assert [(m.left, m.right) for m in dend.merges] == [(0, 1), (2, 3), (4, 5)]


def _random_matrix(rng, n):
    x = rng.random((n, n))
    d = (x + x.T) / 2
    np.fill_diagonal(d, 0)
    return d


@pytest.mark.parametrize("seed", range(40))
@pytest.mark.parametrize("tie_break", ["high", "low"])
def test_matches_brute_force(seed, tie_break):
    rng = np.random.default_rng(seed)
    d = _random_matrix(rng, int(rng.integers(2, 9)))
    dend = average_linkage(DistanceMatrix(d, "sim_complement"), tie_break=tie_break)
    ref = brute_average_linkage(d.tolist(), tie_break)
    assert [m.members for m in dend.merges] == [a | b for a, b, _ in ref]
    assert np.allclose(dend.heights, [h for _, _, h in ref], rtol=0, atol=1e-9)


@pytest.mark.parametrize("tie_break", ["high", "low"])
def test_ties_match_brute_force(tie_break):
    # integer distances: many exact ties
    rng = np.random.default_rng(7)
    for _ in range(30):
        n = int(rng.integers(3, 9))
        x = rng.integers(1, 4, (n, n)).astype(float)
        d = np.triu(x, 1) + np.triu(x, 1).T
        dend = average_linkage(DistanceMatrix(d, "sim_complement"), tie_break=tie_break)
        ref = brute_average_linkage(d.tolist(), tie_break)
        assert [m.members for m in dend.merges] == [a | b for a, b, _ in ref]


@given(st.integers(2, 14), st.integers(0, 2**32 - 1))
def test_dendrogram_invariants(n, seed):
    d = _random_matrix(np.random.default_rng(seed), n)
    dend = average_linkage(DistanceMatrix(d, "sim_complement"))
    assert len(dend.merges) == n - 1
    assert np.all(np.diff(dend.heights) >= -1e-12)
    assert dend.merges[-1].members == frozenset(range(n))
    parts = enumerate_partitions(dend)
    assert len(parts) == n
    for t, p in enumerate(parts):
        assert p.cut_index == t
        assert sum(p.core_sizes) + p.n_periphery == n
        assert all(s >= 2 for s in p.core_sizes)
        assert list(p.core_sizes) == sorted(p.core_sizes, reverse=True)
        covered = set().union(*p.cores) | p.periphery if p.cores else set(p.periphery)
        assert covered == set(range(n))
    # consecutive cuts differ by a single fusion
    for a, b, m in zip(parts, parts[1:], dend.merges):
        clusters_a = set(a.cores) | {frozenset([v]) for v in a.periphery}
        clusters_b = set(b.cores) | {frozenset([v]) for v in b.periphery}
        gone, new = clusters_a - clusters_b, clusters_b - clusters_a
        assert len(gone) == 2 and new == {m.members} and frozenset().union(*gone) == m.members


def test_determinism():
    d = _random_matrix(np.random.default_rng(3), 12)
    a = average_linkage(DistanceMatrix(d, "sim_complement"))
    b = average_linkage(DistanceMatrix(d.copy(), "sim_complement"))
    assert a.to_csv() == b.to_csv()


def test_extreme_cuts():
    d = _random_matrix(np.random.default_rng(5), 6)
    parts = enumerate_partitions(average_linkage(DistanceMatrix(d, "sim_complement")))
    assert parts[0].n_cores == 0 and parts[0].n_periphery == 6
    assert parts[-1].n_cores == 1 and parts[-1].n_periphery == 0 and parts[-1].core_sizes == (6,)


def test_core_ids_by_size_then_smallest_member():
    d = [
        [0, 1, 9, 9, 9, 9, 9],
        [1, 0, 9, 9, 9, 9, 9],
        [9, 9, 0, 1, 1, 9, 9],
        [9, 9, 1, 0, 1, 9, 9],
        [9, 9, 1, 1, 0, 9, 9],
        [9, 9, 9, 9, 9, 0, 1],
        [9, 9, 9, 9, 9, 1, 0],
    ]
    parts = enumerate_partitions(average_linkage(dm(d)))
    p = parts[4]
    assert [sorted(c) for c in p.cores] == [[2, 3, 4], [0, 1], [5, 6]]


def test_csv_roundtrip():
    d = _random_matrix(np.random.default_rng(11), 9)
    dend = average_linkage(DistanceMatrix(d, "sim_complement"))
    text = dend.to_csv()
    assert text.splitlines()[0] == "merge_index,left_ref,right_ref,height,member_count"
    assert Dendrogram.from_csv(text) == dend


@pytest.mark.parametrize("transform", TRANSFORMS)
def test_karate_dendrogram_has_table_s1_cut(karate_graph, transform):
    parts = enumerate_partitions(average_linkage(build_distance_matrix(karate_graph, transform)))
    want = {frozenset(c) for c in TABLE_S1_CORES}
    hits = [p.cut_index for p in parts
            if labelled_cores(karate_graph, p) == want
            and labelled_periphery(karate_graph, p) == TABLE_S1_PERIPHERY]
    assert hits == [15]


def test_karate_low_tie_break_misses_table_s1(karate_graph):
    # vertex 4 is equidistant from 8, 13 and {1, 2, 3, 14}; the low rule
    # puts it with vertex 1
    parts = enumerate_partitions(
        average_linkage(build_distance_matrix(karate_graph, "sim_complement"), tie_break="low"))
    want = {frozenset(c) for c in TABLE_S1_CORES}
    assert all(labelled_cores(karate_graph, p) != want for p in parts)
