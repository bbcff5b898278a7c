import math

import numpy as np
import pytest
from tests_support import brute_force_dunn, clusters_at_threshold, components_at_threshold

from netstates import (
    cut_to_k,
    dendrogram_to_json,
    dendrogram_to_newick,
    dunn_index,
    select_num_states,
    single_linkage,
)


def random_distance_matrix(rng, n, ties=False):
    d = rng.uniform(0.1, 2.0, size=(n, n))
    if ties:
        d = np.round(d, 1)
    d = (d + d.T) / 2
    np.fill_diagonal(d, 0.0)
    return d


def test_single_linkage_hand_example():
    d = np.array([[0.0, 1.0, 5.0], [1.0, 0.0, 4.0], [5.0, 4.0, 0.0]])
    dend = single_linkage(d)
    assert dend.leaf_count == 3
    assert dend.merges[0] == (0, 1, 1.0, 3)
    assert dend.merges[1] == (2, 3, 4.0, 4)


def test_single_linkage_all_equal_distances_tie_break():
    d = np.ones((4, 4)) - np.eye(4)
    dend = single_linkage(d)
    heights = [h for _, _, h, _ in dend.merges]
    assert heights == [1.0, 1.0, 1.0]
    # lowest id pairs merge first: (0,1), then (2,3), then the two new clusters
    assert dend.merges[0][:2] == (0, 1)
    assert dend.merges[1][:2] == (2, 3)
    assert dend.merges[2][:2] == (4, 5)


def test_single_linkage_zero_distance_first():
    d = np.array([[0.0, 0.0, 3.0], [0.0, 0.0, 2.0], [3.0, 2.0, 0.0]])
    dend = single_linkage(d)
    assert dend.merges[0] == (0, 1, 0.0, 3)


def test_single_linkage_heights_nondecreasing_random():
    rng = np.random.default_rng(30)
    for _ in range(20):
        d = random_distance_matrix(rng, int(rng.integers(2, 15)))
        heights = [h for _, _, h, _ in single_linkage(d).merges]
        assert all(b >= a for a, b in zip(heights, heights[1:]))


def test_single_linkage_equals_threshold_components():
    rng = np.random.default_rng(31)
    for trial in range(100):
        n = int(rng.integers(2, 13))
        d = random_distance_matrix(rng, n, ties=(trial % 3 == 0))
        dend = single_linkage(d)
        thresholds = sorted({h for _, _, h, _ in dend.merges})
        probes = [0.0] + thresholds + [h + 1e-9 for h in thresholds] + [np.max(d) + 1.0]
        for h in probes:
            assert clusters_at_threshold(dend, h) == components_at_threshold(d, h)


def test_cut_to_k_boundaries():
    d = np.array([[0.0, 1.0, 5.0], [1.0, 0.0, 4.0], [5.0, 4.0, 0.0]])
    dend = single_linkage(d)
    assert cut_to_k(dend, 1) == [[0, 1, 2]]
    assert cut_to_k(dend, 3) == [[0], [1], [2]]
    assert cut_to_k(dend, 2) == [[0, 1], [2]]
    with pytest.raises(ValueError):
        cut_to_k(dend, 0)
    with pytest.raises(ValueError):
        cut_to_k(dend, 4)


def test_cut_partitions_are_nested():
    rng = np.random.default_rng(32)
    for _ in range(10):
        n = int(rng.integers(3, 14))
        dend = single_linkage(random_distance_matrix(rng, n))
        for k in range(2, n + 1):
            finer = cut_to_k(dend, k)
            coarser = cut_to_k(dend, k - 1)
            for cluster in finer:
                assert any(set(cluster) <= set(big) for big in coarser)


def test_dunn_hand_example():
    d = np.full((4, 4), 5.0)
    d[0, 1] = d[1, 0] = 1.0
    d[2, 3] = d[3, 2] = 1.0
    np.fill_diagonal(d, 0.0)
    assert dunn_index(d, [[0, 1], [2, 3]]) == 5.0


def test_dunn_zero_diameter_sentinel():
    assert dunn_index(np.zeros((3, 3)), [[0, 1], [2]]) == math.inf
    d = np.array([[0.0, 3.0], [3.0, 0.0]])
    assert dunn_index(d, [[0], [1]]) == math.inf


def test_dunn_validation():
    d = np.zeros((3, 3))
    with pytest.raises(ValueError, match="two clusters"):
        dunn_index(d, [[0, 1, 2]])
    with pytest.raises(ValueError, match="two clusters"):
        dunn_index(d, [[0, 1, 2]])
    with pytest.raises(ValueError, match="appears"):
        dunn_index(d, [[0, 1], [1, 2]])


def test_dunn_matches_brute_force_random_partitions():
    rng = np.random.default_rng(33)
    for _ in range(100):
        n = int(rng.integers(2, 11))
        d = random_distance_matrix(rng, n)
        k = int(rng.integers(2, n + 1))
        labels = rng.integers(k, size=n)
        labels[rng.permutation(n)[:k]] = np.arange(k)  # every cluster nonempty
        partition = [list(np.nonzero(labels == c)[0]) for c in range(k)]
        assert dunn_index(d, partition) == brute_force_dunn(d, partition)


def two_block_matrix(n1, n2, rng):
    n = n1 + n2
    d = rng.uniform(0.2, 1.0, size=(n, n))
    d = (d + d.T) / 2
    d[:n1, n1:] += 10.0
    d[n1:, :n1] += 10.0
    np.fill_diagonal(d, 0.0)
    return d


def test_select_two_well_separated_blocks():
    rng = np.random.default_rng(34)
    d = two_block_matrix(4, 3, rng)
    states = select_num_states(d)
    assert states.num_states == 2
    assert list(states.labels) == [1, 1, 1, 1, 2, 2, 2]
    # Dunn at C=2 beats every other non-degenerate cut
    finite = {c: v for c, v in states.dunn_curve.items() if not math.isinf(v)}
    assert max(finite, key=lambda c: (finite[c], -c)) == 2


def test_select_labels_renumbered_by_first_occurrence():
    rng = np.random.default_rng(35)
    d = two_block_matrix(2, 3, rng)
    # move a block-2 window to the front by permuting
    perm = [2, 0, 1, 3, 4]
    d = d[np.ix_(perm, perm)]
    states = select_num_states(d)
    assert states.labels[0] == 1  # the first window always starts state 1


def test_select_scale_invariance():
    rng = np.random.default_rng(36)
    d = random_distance_matrix(rng, 9)
    s1 = select_num_states(d)
    s2 = select_num_states(d * 37.5)
    assert s1.num_states == s2.num_states
    assert np.array_equal(s1.labels, s2.labels)
    for c in s1.dunn_curve:
        a, b = s1.dunn_curve[c], s2.dunn_curve[c]
        assert (math.isinf(a) and math.isinf(b)) or a == pytest.approx(b, rel=1e-9)


def test_select_all_zero_distances_prefers_smallest_c():
    states = select_num_states(np.zeros((5, 5)))
    assert states.num_states == 2  # every cut is a zero-diameter sentinel


def test_select_c_max_and_errors():
    rng = np.random.default_rng(37)
    d = random_distance_matrix(rng, 6)
    states = select_num_states(d, c_max=3)
    assert set(states.dunn_curve) == {2, 3}
    with pytest.raises(ValueError, match="c_max"):
        select_num_states(d, c_max=7)
    with pytest.raises(ValueError, match="t_max < 2"):
        select_num_states(np.zeros((1, 1)))


def test_dendrogram_exports():
    d = np.array([[0.0, 1.0, 5.0], [1.0, 0.0, 4.0], [5.0, 4.0, 0.0]])
    dend = single_linkage(d)
    text = dendrogram_to_json(dend)
    assert '"leaf_count": 3' in text
    newick = dendrogram_to_newick(dend)
    assert newick == "(3:4,(1:1,2:1):3);"
