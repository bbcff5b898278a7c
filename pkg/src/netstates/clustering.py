"""Single-linkage clustering of snapshots and Dunn-index state-count selection."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from .distances import DistanceMatrix


def _as_matrix(dm) -> np.ndarray:
    values = dm.values if isinstance(dm, DistanceMatrix) else np.asarray(dm, dtype=float)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValueError("expected a square distance matrix")
    return values


@dataclass
class Dendrogram:
    """Agglomerative merge sequence.

    Leaves are 0..leaf_count-1; merge step s creates cluster id
    leaf_count + s. Heights are nondecreasing (guaranteed by single linkage).
    """

    merges: list[tuple[int, int, float, int]]
    leaf_count: int

    def __post_init__(self):
        heights = [h for _, _, h, _ in self.merges]
        if any(b < a for a, b in zip(heights, heights[1:])):
            raise ValueError("merge heights must be nondecreasing")


def single_linkage(dm: DistanceMatrix | np.ndarray) -> Dendrogram:
    """Agglomerative clustering with minimum pairwise element distance.

    Ties are broken deterministically: among pairs at the minimal distance,
    merge the one whose smaller cluster id is lowest, then whose larger id is
    lowest. Cluster ids are assigned in merge order starting at leaf_count.
    """
    d = _as_matrix(dm).copy()
    n = d.shape[0]
    if n < 2:
        raise ValueError("t_max < 2: need at least two leaves")
    ids = list(range(n))
    merges: list[tuple[int, int, float, int]] = []
    for step in range(n - 1):
        k = len(ids)
        iu, ju = np.triu_indices(k, 1)
        vals = d[iu, ju]
        height = float(vals.min())
        best = None
        for c in np.nonzero(vals == height)[0]:
            a, b = ids[int(iu[c])], ids[int(ju[c])]
            key = (min(a, b), max(a, b))
            if best is None or key < best[0]:
                best = (key, int(iu[c]), int(ju[c]))
        (low, high), i, j = best
        new_id = n + step
        merges.append((low, high, height, new_id))
        merged_row = np.minimum(d[i], d[j])
        d[i] = merged_row
        d[:, i] = merged_row
        d[i, i] = 0.0
        keep = [idx for idx in range(k) if idx != j]
        d = d[np.ix_(keep, keep)]
        ids[i] = new_id
        del ids[j]
    return Dendrogram(merges=merges, leaf_count=n)


def cut_to_k(dend: Dendrogram, k: int) -> list[list[int]]:
    """Partition into exactly k clusters by undoing the last k-1 merges.

    Clusters are sorted lists of leaf indices, ordered by smallest member.
    """
    n = dend.leaf_count
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    members: dict[int, list[int]] = {i: [i] for i in range(n)}
    for a, b, _, new_id in dend.merges[: n - k]:
        members[new_id] = members.pop(a) + members.pop(b)
    clusters = [sorted(group) for group in members.values()]
    clusters.sort(key=lambda grp: grp[0])
    return clusters


def dunn_index(dm: DistanceMatrix | np.ndarray, partition: Sequence[Sequence[int]]) -> float:
    """Smallest between-cluster distance over largest within-cluster diameter.

    Singleton clusters have diameter zero. When every cluster has zero
    diameter the index is defined here as +infinity, so perfectly tight
    partitions with few clusters win ties (taken together with smallest-C
    tie-breaking in :func:`select_num_states`).
    """
    d = _as_matrix(dm)
    clusters = [np.asarray(sorted(c), dtype=np.int64) for c in partition]
    if len(clusters) < 2:
        raise ValueError("Dunn index needs at least two clusters")
    seen: set[int] = set()
    for c in clusters:
        if len(c) == 0:
            raise ValueError("empty cluster in partition")
        overlap = seen.intersection(c.tolist())
        if overlap:
            raise ValueError(f"element {min(overlap)} appears in two clusters")
        seen.update(c.tolist())

    min_between = math.inf
    for i in range(len(clusters)):
        for j in range(i + 1, len(clusters)):
            block = d[np.ix_(clusters[i], clusters[j])]
            min_between = min(min_between, float(block.min()))
    max_diameter = 0.0
    for c in clusters:
        if len(c) > 1:
            block = d[np.ix_(c, c)]
            max_diameter = max(max_diameter, float(block.max()))
    if max_diameter == 0.0:
        return math.inf
    return min_between / max_diameter


@dataclass
class StateSequence:
    """Per-window state labels 1..C plus the Dunn curve over candidate counts."""

    labels: np.ndarray
    num_states: int
    dunn_curve: dict[int, float]

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        present = set(labels.tolist())
        if present != set(range(1, self.num_states + 1)):
            raise ValueError("labels must cover 1..C with every state present")
        self.labels = labels


def _labels_by_first_occurrence(partition: list[list[int]], n: int) -> np.ndarray:
    raw = np.empty(n, dtype=np.int64)
    for c, members in enumerate(partition):
        for leaf in members:
            raw[leaf] = c
    relabel: dict[int, int] = {}
    labels = np.empty(n, dtype=np.int64)
    for t in range(n):
        c = int(raw[t])
        if c not in relabel:
            relabel[c] = len(relabel) + 1
        labels[t] = relabel[c]
    return labels


def select_num_states(
    dm: DistanceMatrix | np.ndarray,
    dend: Dendrogram | None = None,
    c_max: int | None = None,
) -> StateSequence:
    """Pick the state count maximizing the Dunn index over cuts of the dendrogram.

    Candidates run over 2..c_max (default: the window count). Ties resolve
    toward the smallest count; +infinity sentinels (all clusters of zero
    diameter, e.g. the all-singletons cut) never beat a finite value and act
    only as a fallback when every candidate is degenerate, again at the
    smallest count. Labels are renumbered by first occurrence in time, so the
    first window is always in state 1.
    """
    d = _as_matrix(dm)
    t_max = d.shape[0]
    if t_max < 2:
        raise ValueError("t_max < 2: nothing to cluster")
    if dend is None:
        dend = single_linkage(d)
    if dend.leaf_count != t_max:
        raise ValueError("dendrogram leaf count does not match the distance matrix")
    if c_max is None:
        c_max = t_max
    if not 2 <= c_max <= t_max:
        raise ValueError(f"c_max must be in [2, {t_max}]")

    curve: dict[int, float] = {}
    best_c = None
    best_value = -math.inf
    best_partition = None
    fallback = None
    for c in range(2, c_max + 1):
        partition = cut_to_k(dend, c)
        value = dunn_index(d, partition)
        curve[c] = value
        if math.isinf(value):
            if fallback is None:
                fallback = (c, partition)
        elif value > best_value:  # strict: first (smallest) C wins ties
            best_c, best_value, best_partition = c, value, partition
    if best_c is None:
        best_c, best_partition = fallback
    labels = _labels_by_first_occurrence(best_partition, t_max)
    return StateSequence(labels=labels, num_states=best_c, dunn_curve=curve)


# ---------------------------------------------------------------------------
# export formats


def _json_safe(x: float):
    if math.isinf(x):
        return "inf"
    return x


def dendrogram_to_json(dend: Dendrogram) -> str:
    payload = {
        "leaf_count": dend.leaf_count,
        "merges": [
            {"a": a, "b": b, "height": float(f"{h:.12g}"), "id": mid}
            for a, b, h, mid in dend.merges
        ],
    }
    return json.dumps(payload, sort_keys=True)


def dendrogram_to_newick(dend: Dendrogram) -> str:
    """Newick text with 1-based window numbers as leaf names and merge heights.

    Branch lengths are height differences between a cluster's merge and its
    parent's merge, so root-to-leaf distance equals the root merge height.
    """
    reps: dict[int, str] = {i: str(i + 1) for i in range(dend.leaf_count)}
    height_of: dict[int, float] = {i: 0.0 for i in range(dend.leaf_count)}
    for a, b, h, mid in dend.merges:
        la = f"{reps.pop(a)}:{h - height_of.pop(a):.12g}"
        lb = f"{reps.pop(b)}:{h - height_of.pop(b):.12g}"
        reps[mid] = f"({la},{lb})"
        height_of[mid] = h
    (root,) = reps.values()
    return root + ";"


def states_to_json(states: StateSequence, stream: IO[str]) -> None:
    payload = {
        "num_states": states.num_states,
        "labels": states.labels.tolist(),
        "dunn_curve": {str(c): _json_safe(v) for c, v in sorted(states.dunn_curve.items())},
    }
    json.dump(payload, stream, sort_keys=True)
    stream.write("\n")
