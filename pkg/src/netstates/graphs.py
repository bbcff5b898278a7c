"""Undirected labeled graphs on a fixed node set, plus adjacency/Laplacian builders."""

from __future__ import annotations

import json
from typing import IO, Iterable, Mapping, Sequence

import numpy as np

Edge = tuple[int, int]

LAPLACIAN_KINDS = ("combinatorial", "normalized")


class Graph:
    """Immutable undirected simple graph on nodes 0..n-1.

    Edges are unordered index pairs stored as (i, j) with i < j. Self-loops
    are rejected. Optional positive per-edge weights (event counts in the
    snapshot setting) and per-node string labels; unlabeled graphs get their
    stringified indices as labels, so two graphs on the same index range
    share node identities.
    """

    __slots__ = ("n", "edges", "weights", "labels")

    def __init__(
        self,
        n: int,
        edges: Iterable[Edge] = (),
        weights: Mapping[Edge, float] | None = None,
        labels: Sequence[str] | None = None,
    ):
        if n < 0:
            raise ValueError("node count must be nonnegative")
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside node range [0, {n})")
            canon.add((u, v) if u < v else (v, u))
        self.n = int(n)
        self.edges = frozenset(canon)
        if weights is not None:
            w = {}
            for (u, v), value in weights.items():
                key = (u, v) if u < v else (v, u)
                if key not in self.edges:
                    raise ValueError(f"weight given for missing edge {key}")
                if value <= 0:
                    raise ValueError(f"weight for edge {key} must be positive")
                w[key] = float(value)
            self.weights = w
        else:
            self.weights = None
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise ValueError("labels length must equal node count")
            if len(set(labels)) != n:
                raise ValueError("node labels must be distinct")
        self.labels = labels

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def node_labels(self) -> tuple[str, ...]:
        return self.labels if self.labels is not None else tuple(str(i) for i in range(self.n))

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.edges == other.edges
            and self.weights == other.weights
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


def adjacency(g: Graph, binarize: bool = True) -> np.ndarray:
    """Dense symmetric adjacency matrix with zero diagonal.

    With ``binarize`` every present edge contributes 1; otherwise its weight
    (edges without a stored weight count as 1).
    """
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        if binarize or g.weights is None:
            w = 1.0
        else:
            w = g.weights.get((u, v), 1.0)
        a[u, v] = w
        a[v, u] = w
    return a


def laplacian(g: Graph, kind: str = "combinatorial") -> np.ndarray:
    """Graph Laplacian of the binarized graph.

    ``combinatorial`` is degree matrix minus adjacency. ``normalized`` is
    I - D^{-1/2} A D^{-1/2}; rows and columns of isolated nodes are all zero,
    including the diagonal, so an empty graph maps to the zero matrix.
    """
    if kind not in LAPLACIAN_KINDS:
        raise ValueError(f"unknown Laplacian kind {kind!r}; expected one of {LAPLACIAN_KINDS}")
    a = adjacency(g, binarize=True)
    deg = a.sum(axis=1)
    if kind == "combinatorial":
        return np.diag(deg) - a
    with np.errstate(divide="ignore"):
        inv_sqrt = np.where(deg > 0, 1.0 / np.sqrt(np.where(deg > 0, deg, 1.0)), 0.0)
    lap = -(inv_sqrt[:, None] * a * inv_sqrt[None, :])
    lap[np.diag_indices(g.n)] = np.where(deg > 0, 1.0, 0.0)
    return lap


def graph_intersection(
    g1: Graph, g2: Graph, node_universe: Iterable[str] | None = None
) -> tuple[int, int]:
    """Count the labeled nodes and labeled edges present in both graphs.

    Identification is by node label only; no isomorphism matching is ever
    attempted. ``node_universe``, when given, is validated to cover both
    graphs' labels.
    """
    labels1 = g1.node_labels()
    labels2 = g2.node_labels()
    if node_universe is not None:
        universe = set(node_universe)
        missing = (set(labels1) | set(labels2)) - universe
        if missing:
            raise ValueError(f"labels outside node universe: {sorted(missing)[:5]}")
    common_nodes = set(labels1) & set(labels2)
    edges1 = {frozenset((labels1[u], labels1[v])) for u, v in g1.edges}
    edges2 = {frozenset((labels2[u], labels2[v])) for u, v in g2.edges}
    return len(common_nodes), len(edges1 & edges2)


def graph_to_json(g: Graph, communities: Sequence[int] | None = None) -> str:
    """Serialize a graph (and optional per-node community ids) to JSON text."""
    edges = sorted(g.edges)
    payload: dict = {"n": g.n, "edges": [list(e) for e in edges]}
    if g.weights is not None:
        payload["weights"] = [g.weights.get(e, 1.0) for e in edges]
    if g.labels is not None:
        payload["labels"] = list(g.labels)
    if communities is not None:
        if len(communities) != g.n:
            raise ValueError("communities length must equal node count")
        payload["communities"] = [int(c) for c in communities]
    return json.dumps(payload, sort_keys=True)


def graph_from_json(text: str) -> tuple[Graph, list[int] | None]:
    """Inverse of :func:`graph_to_json`. Returns (graph, communities-or-None)."""
    payload = json.loads(text)
    edges = [tuple(e) for e in payload["edges"]]
    weights = None
    if "weights" in payload:
        weights = {e: w for e, w in zip(edges, payload["weights"])}
    g = Graph(payload["n"], edges, weights=weights, labels=payload.get("labels"))
    return g, payload.get("communities")


def write_edge_list(g: Graph, stream: IO[str]) -> None:
    """Write "u v [weight]" lines using node labels, preceded by a node-list header.

    The header preserves isolated nodes and label order across a round trip.
    """
    labels = g.node_labels()
    stream.write("# nodes: " + " ".join(labels) + "\n")
    for u, v in sorted(g.edges):
        if g.weights is not None and (u, v) in g.weights:
            stream.write(f"{labels[u]} {labels[v]} {g.weights[(u, v)]:.12g}\n")
        else:
            stream.write(f"{labels[u]} {labels[v]}\n")


def read_edge_list(stream: IO[str]) -> Graph:
    """Read a graph written by :func:`write_edge_list`.

    Without a "# nodes:" header the node set is the union of edge endpoints,
    indexed by first appearance.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    edges = []
    weights = {}
    for line in stream:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# nodes:"):
                for lab in line[len("# nodes:"):].split():
                    if lab not in index:
                        index[lab] = len(labels)
                        labels.append(lab)
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ValueError(f"malformed edge line: {line!r}")
        for lab in parts[:2]:
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
        u, v = index[parts[0]], index[parts[1]]
        key = (u, v) if u < v else (v, u)
        edges.append(key)
        if len(parts) == 3:
            weights[key] = float(parts[2])
    return Graph(len(labels), edges, weights=weights or None, labels=labels)
