"""Graph distance measures and the pairwise snapshot distance matrix.

Seven measures are available: labeled graph edit distance, the exact
DELTACON node-affinity distance, the quantum-spectral Jensen-Shannon
divergence at a diffusion time beta, and four Laplacian spectrum distances
(unnormalized or normalized comparison, on the combinatorial or the
normalized Laplacian). Snapshots are binarized before every distance
computation; event counts only feed the event-rate series.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO, Callable

import numpy as np

from .events import SnapshotSequence
from .graphs import LAPLACIAN_KINDS, Graph, adjacency, graph_intersection, laplacian
from .linalg import matrix_exp_neg, solve_linear_symmetric, sym_eigenvalues

_CLAMP_TOL = 1e-12

MEASURE_TAGS = ("edit", "deltacon", "jsd", "spectrum-unnorm", "spectrum-norm")


@dataclass(frozen=True)
class Measure:
    """A distance measure selection.

    ``laplacian`` and ``beta`` matter for the spectral measures only;
    ``n_eig`` (spectrum measures) defaults to the full spectrum.
    """

    tag: str
    laplacian: str = "combinatorial"
    beta: float = 1.0
    n_eig: int | None = None

    def __post_init__(self):
        if self.tag not in MEASURE_TAGS:
            raise ValueError(f"unknown measure {self.tag!r}; expected one of {MEASURE_TAGS}")
        if self.laplacian not in LAPLACIAN_KINDS:
            raise ValueError(f"unknown Laplacian kind {self.laplacian!r}")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.n_eig is not None and self.n_eig < 1:
            raise ValueError("n_eig must be positive")

    def label(self) -> str:
        if self.tag == "jsd":
            return f"jsd(beta={self.beta:g}, {self.laplacian})"
        if self.tag.startswith("spectrum"):
            extra = f", n_eig={self.n_eig}" if self.n_eig is not None else ""
            return f"{self.tag}({self.laplacian}{extra})"
        return self.tag

    def to_dict(self) -> dict:
        return {"tag": self.tag, "laplacian": self.laplacian, "beta": self.beta, "n_eig": self.n_eig}


def edit_distance(g1: Graph, g2: Graph) -> float:
    """Labeled graph edit distance: node and edge insertions plus deletions.

    Counts N1 + N2 - 2*N(common) + M1 + M2 - 2*M(common), where commonality
    is by node label (no isomorphism matching).
    """
    common_nodes, common_edges = graph_intersection(g1, g2)
    return float(
        g1.n + g2.n - 2 * common_nodes + g1.num_edges + g2.num_edges - 2 * common_edges
    )


def deltacon_affinity(g: Graph) -> np.ndarray:
    """DELTACON node-affinity matrix S = [I + eps^2 D - eps A]^{-1}.

    eps = 1/(1 + max degree); an empty graph gives eps = 1 and S = I. The
    system matrix is strictly diagonally dominant, hence positive definite.
    """
    a = adjacency(g, binarize=True)
    deg = a.sum(axis=1)
    max_deg = float(deg.max()) if g.n else 0.0
    eps = 1.0 / (1.0 + max_deg)
    system = np.eye(g.n) + eps * eps * np.diag(deg) - eps * a
    return solve_linear_symmetric(system, np.eye(g.n))


def _root_euclidean(s1: np.ndarray, s2: np.ndarray) -> float:
    def safe_sqrt(s):
        if s.min() < -_CLAMP_TOL:
            raise ValueError(f"affinity entry {s.min():.3e} is negative beyond tolerance")
        return np.sqrt(np.clip(s, 0.0, None))

    diff = safe_sqrt(s1) - safe_sqrt(s2)
    return float(np.sqrt(np.sum(diff * diff)))


def deltacon_distance(g1: Graph, g2: Graph) -> float:
    """Exact DELTACON distance: root-Euclidean metric between affinity matrices."""
    if g1.n != g2.n:
        raise ValueError("graphs must share the node count")
    return _root_euclidean(deltacon_affinity(g1), deltacon_affinity(g2))


def density_matrix(g: Graph, beta: float = 1.0, kind: str = "combinatorial") -> np.ndarray:
    """Diffusion density matrix exp(-beta L) normalized to unit trace."""
    rho = matrix_exp_neg(laplacian(g, kind), beta)
    return rho / np.trace(rho)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy in bits of a density matrix; eigenvalues below 1e-14 count as zero."""
    rho = np.asarray(rho, dtype=float)
    trace = float(np.trace(rho))
    if abs(trace - 1.0) > 1e-6:
        raise ValueError(f"density matrix trace {trace} deviates from 1 beyond 1e-6")
    evals = sym_eigenvalues(rho)
    if evals.min() < -1e-8:
        raise ValueError(f"density matrix has negative eigenvalue {evals.min():.3e}")
    evals = evals[evals >= 1e-14]
    return float(-np.sum(evals * np.log2(evals)))


def _jsd_from_density(rho1, rho2, s1, s2) -> float:
    s_mix = von_neumann_entropy((rho1 + rho2) / 2.0)
    radicand = s_mix - 0.5 * (s1 + s2)
    if radicand < -_CLAMP_TOL:
        raise ValueError(f"negative divergence {radicand:.3e} beyond tolerance")
    return math.sqrt(max(radicand, 0.0))


def jsd_distance(
    g1: Graph, g2: Graph, beta: float = 1.0, kind: str = "combinatorial"
) -> float:
    """Quantum-spectral Jensen-Shannon distance between diffusion density matrices.

    The divergence is measured in bits, so the distance lies in [0, 1].
    """
    if g1.n != g2.n:
        raise ValueError("graphs must share the node count")
    rho1 = density_matrix(g1, beta, kind)
    rho2 = density_matrix(g2, beta, kind)
    return _jsd_from_density(
        rho1, rho2, von_neumann_entropy(rho1), von_neumann_entropy(rho2)
    )


def _descending_spectrum(g: Graph, kind: str) -> np.ndarray:
    return sym_eigenvalues(laplacian(g, kind))[::-1]


def _spectrum_pair_distance(
    spec1: np.ndarray, spec2: np.ndarray, normalized: bool, n_eig: int
) -> float:
    top1 = spec1[:n_eig]
    top2 = spec2[:n_eig]
    gap = float(np.sum((top1 - top2) ** 2))
    if not normalized:
        return math.sqrt(gap)
    denom = max(float(np.sum(top1**2)), float(np.sum(top2**2)))
    if denom == 0.0:
        return 0.0  # two empty graphs: identical spectra
    return math.sqrt(gap / denom)


def spectrum_distance(
    g1: Graph,
    g2: Graph,
    kind: str = "normalized",
    normalized: bool = True,
    n_eig: int | None = None,
) -> float:
    """Euclidean comparison of the n_eig largest Laplacian eigenvalues.

    The normalized variant divides the squared gap by the larger of the two
    squared-spectrum sums, which bounds the distance by sqrt(2); dividing by
    the smaller sum instead could grow without bound.
    """
    if g1.n != g2.n:
        raise ValueError("graphs must share the node count")
    if n_eig is None:
        n_eig = g1.n
    if not 1 <= n_eig <= g1.n:
        raise ValueError(f"n_eig must be in [1, {g1.n}]")
    return _spectrum_pair_distance(
        _descending_spectrum(g1, kind), _descending_spectrum(g2, kind), normalized, n_eig
    )


def graph_distance(g1: Graph, g2: Graph, measure: Measure) -> float:
    """Distance between two graphs under the selected measure."""
    if measure.tag == "edit":
        return edit_distance(g1, g2)
    if measure.tag == "deltacon":
        return deltacon_distance(g1, g2)
    if measure.tag == "jsd":
        return jsd_distance(g1, g2, beta=measure.beta, kind=measure.laplacian)
    return spectrum_distance(
        g1,
        g2,
        kind=measure.laplacian,
        normalized=(measure.tag == "spectrum-norm"),
        n_eig=measure.n_eig,
    )


@dataclass
class DistanceMatrix:
    """Symmetric nonnegative matrix of pairwise snapshot distances."""

    values: np.ndarray
    measure: Measure

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("distance matrix must be square")
        if not np.all(np.isfinite(v)):
            raise ValueError("distance matrix has non-finite entries")
        if np.any(v < 0):
            raise ValueError("distance matrix has negative entries")
        if np.any(np.diag(v) != 0):
            raise ValueError("distance matrix diagonal must be zero")
        if not np.array_equal(v, v.T):
            raise ValueError("distance matrix must be symmetric")
        self.values = v

    @property
    def t_max(self) -> int:
        return self.values.shape[0]


def _snapshot_summaries(
    seq: SnapshotSequence, measure: Measure
) -> tuple[list, Callable[[object, object], float]]:
    """Per-snapshot precomputation plus a pair-distance function over summaries."""
    snaps = seq.snapshots
    if measure.tag == "edit":
        # snapshots share the full node set, so the node terms cancel
        summaries = [g.edges for g in snaps]

        def pair(e1, e2):
            return float(len(e1) + len(e2) - 2 * len(e1 & e2))

        return summaries, pair
    if measure.tag == "deltacon":
        summaries = [deltacon_affinity(g) for g in snaps]
        return summaries, _root_euclidean
    if measure.tag == "jsd":
        rhos = [density_matrix(g, measure.beta, measure.laplacian) for g in snaps]
        summaries = [(rho, von_neumann_entropy(rho)) for rho in rhos]

        def pair(a, b):
            return _jsd_from_density(a[0], b[0], a[1], b[1])

        return summaries, pair
    n_eig = seq.node_count if measure.n_eig is None else measure.n_eig
    if not 1 <= n_eig <= seq.node_count:
        raise ValueError(f"n_eig must be in [1, {seq.node_count}]")
    normalized = measure.tag == "spectrum-norm"
    summaries = [_descending_spectrum(g, measure.laplacian) for g in snaps]

    def pair(s1, s2):
        return _spectrum_pair_distance(s1, s2, normalized, n_eig)

    return summaries, pair


def pairwise_distance_matrix(seq: SnapshotSequence, measure: Measure) -> DistanceMatrix:
    """Distance between every unordered pair of snapshots.

    Each pair is computed once and mirrored, so the result is symmetric by
    construction and independent of evaluation order. Per-snapshot spectra,
    affinities, or density matrices are precomputed once.
    """
    t = seq.t_max
    if t < 2:
        raise ValueError("t_max < 2: need at least two snapshots to compare")
    summaries, pair = _snapshot_summaries(seq, measure)
    d = np.zeros((t, t))
    for i in range(t):
        for j in range(i + 1, t):
            try:
                value = pair(summaries[i], summaries[j])
            except ValueError as exc:
                raise ValueError(f"distance failed for snapshot pair ({i + 1}, {j + 1}): {exc}") from exc
            d[i, j] = value
            d[j, i] = value
    return DistanceMatrix(values=d, measure=measure)


def to_similarity(dm: DistanceMatrix) -> np.ndarray:
    """Similarity transform sim = 1 - d / max(d), mapping zero distance to 1.

    Undefined (raises) when every distance is zero, since the transform
    divides by the maximum distance.
    """
    d = dm.values
    max_d = float(d.max())
    if max_d == 0.0:
        raise ValueError("all distances are zero; similarity transform is undefined")
    return 1.0 - d / max_d


# ---------------------------------------------------------------------------
# export formats


def write_distance_csv(dm: DistanceMatrix, stream: IO[str]) -> None:
    """Full symmetric matrix at 12 significant digits under a window-index header."""
    t = dm.t_max
    stream.write(",".join(str(i) for i in range(1, t + 1)) + "\n")
    for row in dm.values:
        stream.write(",".join(f"{x:.12g}" for x in row) + "\n")


def read_distance_csv(stream: IO[str], measure: Measure | None = None) -> DistanceMatrix:
    """Read a matrix written by :func:`write_distance_csv`."""
    lines = [ln.strip() for ln in stream if ln.strip()]
    if len(lines) < 2:
        raise ValueError("distance CSV must have a header and at least one row")
    t = len(lines[0].split(","))
    rows = [[float(x) for x in ln.split(",")] for ln in lines[1:]]
    values = np.array(rows)
    if values.shape != (t, t):
        raise ValueError(f"expected a {t}x{t} matrix, got {values.shape}")
    values = (values + values.T) / 2.0  # guard against last-digit rounding
    np.fill_diagonal(values, 0.0)
    if measure is None:
        measure = Measure("spectrum-norm", laplacian="normalized")
    return DistanceMatrix(values=values, measure=measure)


def write_distance_json(dm: DistanceMatrix, stream: IO[str]) -> None:
    payload = {
        "measure": dm.measure.to_dict(),
        "t_max": dm.t_max,
        "distances": [[float(f"{x:.12g}") for x in row] for row in dm.values],
    }
    json.dump(payload, stream, sort_keys=True)
    stream.write("\n")
