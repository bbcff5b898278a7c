"""Synthetic graph models: regular random, preferential attachment, LFR, planted SBM.

All generators are deterministic functions of their parameters and a 64-bit
seed; the same seed reproduces the exact edge set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .events import SnapshotSequence
from .graphs import Graph

_MAX_RRG_RESTARTS = 1_000_000


def regular_random_graph(n: int, degree: int, seed: int) -> Graph:
    """Random graph with every node degree exactly ``degree``.

    Configuration-model stub matching: shuffle stubs, pair them, restart from
    scratch whenever the pairing produces a self-loop or a multi-edge. This
    keeps the sample uniform over simple matchings and is fast enough for the
    small dense graphs used here (acceptance probability shrinks rapidly with
    degree, so avoid degree >> 6).
    """
    if degree < 0 or n < 1:
        raise ValueError("need n >= 1 and degree >= 0")
    if degree >= n:
        raise ValueError(f"degree {degree} infeasible for {n} nodes")
    if (n * degree) % 2 != 0:
        raise ValueError("n * degree must be even")
    rng = np.random.default_rng(seed)
    if degree == 0:
        return Graph(n)
    stubs = np.repeat(np.arange(n), degree)
    for _ in range(_MAX_RRG_RESTARTS):
        rng.shuffle(stubs)
        u = stubs[0::2]
        v = stubs[1::2]
        if np.any(u == v):
            continue
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        keys = lo.astype(np.int64) * n + hi
        if len(np.unique(keys)) != len(keys):
            continue
        return Graph(n, zip(lo.tolist(), hi.tolist()))
    raise RuntimeError(f"no simple {degree}-regular matching found after {_MAX_RRG_RESTARTS} restarts")


def barabasi_albert_graph(n: int, m0: int, m: int, seed: int) -> Graph:
    """Preferential-attachment growth from an initial clique of ``m0`` nodes.

    Each new node attaches ``m`` edges to distinct existing nodes chosen with
    probability proportional to degree. Node indices are randomly permuted at
    the end, so the index carries no age or degree information.
    """
    if not (1 <= m <= m0 < n):
        raise ValueError("need 1 <= m <= m0 < n")
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = [(i, j) for i in range(m0) for j in range(i + 1, m0)]
    # one entry per unit of degree; sampling from it is degree-proportional
    repeated: list[int] = [i for i in range(m0) for _ in range(m0 - 1)]
    if not repeated:
        repeated = list(range(m0))  # m0 == 1: start attachment uniformly
    for new in range(m0, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(repeated[rng.integers(len(repeated))])
        for t in sorted(targets):
            edges.append((t, new))
            repeated.append(t)
        repeated.extend([new] * m)
    perm = rng.permutation(n)
    return Graph(n, ((int(perm[u]), int(perm[v])) for u, v in edges))


# ---------------------------------------------------------------------------
# bounded power-law sampling (shared by the LFR construction)


def _powerlaw_cdf(x: np.ndarray | float, gamma: float, lo: float, hi: float):
    if gamma == 1.0:
        return np.log(np.asarray(x) / lo) / math.log(hi / lo)
    e = 1.0 - gamma
    return (np.asarray(x) ** e - lo**e) / (hi**e - lo**e)


def _powerlaw_sample(rng, size: int, gamma: float, lo: float, hi: float) -> np.ndarray:
    """Continuous samples from density ~ x^-gamma on [lo, hi]."""
    u = rng.random(size)
    if gamma == 1.0:
        return lo * (hi / lo) ** u
    e = 1.0 - gamma
    return (lo**e + u * (hi**e - lo**e)) ** (1.0 / e)


def _rounded_powerlaw_mean(gamma: float, lo: float, hi: float) -> float:
    """E[round(x)] for x ~ bounded power law; used to calibrate the cutoff."""
    total = 0.0
    for k in range(int(math.floor(lo)), int(math.ceil(hi)) + 1):
        a = max(lo, k - 0.5)
        b = min(hi, k + 0.5)
        if b <= a:
            continue
        p = float(_powerlaw_cdf(b, gamma, lo, hi) - _powerlaw_cdf(a, gamma, lo, hi))
        total += k * p
    return total


def _solve_min_degree(mean_degree: float, gamma: float, max_degree: int) -> float:
    """Lower power-law cutoff whose rounded-sample mean hits ``mean_degree``."""
    if not 1.0 <= mean_degree < max_degree:
        raise ValueError("mean_degree must lie in [1, max_degree)")
    lo, hi = 1.0, float(max_degree)
    for _ in range(80):
        mid = (lo + hi) / 2.0
        if _rounded_powerlaw_mean(gamma, mid, float(max_degree)) < mean_degree:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def _sample_rounded_powerlaw(rng, size, gamma, lo, hi) -> np.ndarray:
    x = _powerlaw_sample(rng, size, gamma, lo, hi)
    return np.clip(np.rint(x).astype(np.int64), max(1, int(math.ceil(lo - 0.5))), int(hi))


# ---------------------------------------------------------------------------
# LFR benchmark


def _sample_community_sizes(rng, n, gamma, lo, hi, need, max_tries) -> list[int]:
    """Power-law community sizes summing to n, with max(sizes) >= need.

    The ``need`` constraint guarantees some community can host the largest
    within-community degree; sizes are resampled (degrees are not) until it
    holds, which is how feasibility is usually restored in LFR constructions.
    """
    if need > hi:
        raise RuntimeError(
            f"largest within-community degree needs a community of {need} nodes "
            f"but max_community is {hi}; raise max_community"
        )
    for _ in range(max_tries):
        sizes: list[int] = []
        while sum(sizes) < n:
            sizes.append(int(_sample_rounded_powerlaw(rng, 1, gamma, float(lo), float(hi))[0]))
        excess = sum(sizes) - n
        if excess > 0:
            big = max(range(len(sizes)), key=lambda i: sizes[i])
            if sizes[big] - excess < lo:
                continue
            sizes[big] -= excess
        if max(sizes) >= need:
            return sizes
    raise RuntimeError(
        f"could not draw community sizes summing to {n} with a community of at "
        f"least {need} nodes; widen the community size bounds"
    )


def _assign_communities(rng, intra_deg, sizes, max_tries) -> np.ndarray:
    """Random assignment with eviction until every node fits its community.

    A node fits a community when its within-community degree is strictly less
    than the community size.
    """
    n = len(intra_deg)
    member: list[set[int]] = [set() for _ in sizes]
    assignment = np.full(n, -1, dtype=np.int64)
    free = list(range(n))
    for _ in range(max_tries):
        if not free:
            return assignment
        v = free.pop()
        c = int(rng.integers(len(sizes)))
        if intra_deg[v] < sizes[c]:
            member[c].add(v)
            assignment[v] = c
        else:
            free.append(v)
            continue
        if len(member[c]) > sizes[c]:
            out = sorted(member[c])[int(rng.integers(len(member[c])))]
            member[c].discard(out)
            assignment[out] = -1
            free.append(out)
    raise RuntimeError(
        "could not assign nodes to communities; a node's within-community degree "
        "exceeds every feasible community size"
    )


def _graphical_wiring(rng, members, degs) -> list[tuple[int, int]] | None:
    """Simple graph on ``members`` realizing ``degs``, sampled by randomization.

    Havel-Hakimi builds one realization (None if the sequence is not
    graphical); degree-preserving double-edge swaps then randomize it. Unlike
    stub matching this cannot stall on dense sequences, which within-community
    wiring hits routinely at low mixing.
    """
    work = [[int(d), int(v)] for d, v in zip(degs, members) if d > 0]
    edges: set[tuple[int, int]] = set()
    while work:
        work.sort(reverse=True)
        d, v = work.pop(0)
        if d > len(work):
            return None
        for slot in range(d):
            work[slot][0] -= 1
            u = work[slot][1]
            edges.add((u, v) if u < v else (v, u))
        work = [w for w in work if w[0] > 0]
    edge_list = sorted(edges)
    m = len(edge_list)
    for _ in range(10 * m):
        if m < 2:
            break
        i, j = int(rng.integers(m)), int(rng.integers(m))
        if i == j:
            continue
        a, b = edge_list[i]
        c, d2 = edge_list[j]
        if rng.random() < 0.5:
            c, d2 = d2, c
        if len({a, b, c, d2}) < 4:
            continue
        k1 = (a, c) if a < c else (c, a)
        k2 = (b, d2) if b < d2 else (d2, b)
        if k1 in edges or k2 in edges:
            continue
        edges.discard(edge_list[i])
        edges.discard(edge_list[j])
        edges.add(k1)
        edges.add(k2)
        edge_list[i] = k1
        edge_list[j] = k2
    return sorted(edges)


def _pair_stubs_with_repair(rng, stubs, forbidden_pair, existing, max_swaps=10_000):
    """Pair a stub list into simple edges, repairing conflicts by edge swaps.

    ``forbidden_pair(u, v)`` marks pairs that may never become edges (self
    loops are always rejected). Conflicting pairs are repaired by swapping
    endpoints with an already-accepted edge, which preserves all degrees.
    Returns the edge list or None if repair stalls.
    """
    stubs = np.array(stubs, dtype=np.int64)
    rng.shuffle(stubs)
    half = len(stubs) // 2
    good: list[tuple[int, int]] = []
    seen = set(existing)
    bad: list[tuple[int, int]] = []
    for i in range(half):
        u, v = int(stubs[2 * i]), int(stubs[2 * i + 1])
        key = (u, v) if u < v else (v, u)
        if u == v or key in seen or forbidden_pair(u, v):
            bad.append((u, v))
        else:
            seen.add(key)
            good.append(key)
    swaps = 0
    while bad and swaps < max_swaps:
        swaps += 1
        u, v = bad.pop()
        if not good:
            return None
        j = int(rng.integers(len(good)))
        x, y = good[j]
        if rng.random() < 0.5:
            x, y = y, x
        # try (u, x) and (v, y)
        k1 = (u, x) if u < x else (x, u)
        k2 = (v, y) if v < y else (y, v)
        if (
            u != x
            and v != y
            and k1 not in seen
            and k2 not in seen
            and k1 != k2
            and not forbidden_pair(u, x)
            and not forbidden_pair(v, y)
        ):
            seen.discard((x, y) if x < y else (y, x))
            good[j] = k1
            seen.add(k1)
            seen.add(k2)
            good.append(k2)
        else:
            bad.append((u, v))
            # rotate so we do not retry the same victim forever
            if len(bad) > 1 and swaps % 7 == 0:
                bad.insert(0, bad.pop())
    if bad:
        return None
    return good


def lfr_graph(
    n: int,
    mu: float,
    *,
    degree_exponent: float = 2.0,
    mean_degree: float = 6.0,
    max_degree: int | None = None,
    min_degree: float | None = None,
    community_exponent: float = 1.0,
    min_community: int = 10,
    max_community: int | None = None,
    max_attempts: int = 200,
    seed: int = 0,
) -> tuple[Graph, np.ndarray]:
    """LFR benchmark graph with planted communities.

    Returns ``(graph, communities)`` where ``communities[v]`` is the planted
    community index of node v. A fraction ``mu`` of each node's edges goes to
    other communities. Degrees follow a bounded power law with the given
    exponent; when ``min_degree`` is omitted, the lower cutoff is calibrated
    so the expected mean degree equals ``mean_degree``. Community sizes
    follow a bounded power law with ``community_exponent``.

    Construction: sample degrees and community sizes, assign nodes to
    communities that can host their within-community degree, wire
    within-community edges per community by configuration-model matching,
    wire the remaining stubs globally across communities, and repair
    collisions by degree-preserving swaps. Retries with fresh randomness up
    to ``max_attempts`` before raising.
    """
    if not 0.0 <= mu <= 1.0:
        raise ValueError("mu must be in [0, 1]")
    if degree_exponent <= 1.0:
        raise ValueError("degree_exponent must exceed 1")
    if community_exponent < 1.0:
        raise ValueError("community_exponent must be at least 1")
    if max_degree is None:
        max_degree = max(2, n // 4)
    if max_degree >= n:
        raise ValueError("max_degree must be below n")
    if min_community > n:
        raise ValueError("min_community exceeds n")
    if max_community is None:
        max_community = max(min_community, max_degree + 1)
    if min_degree is None:
        min_degree = _solve_min_degree(mean_degree, degree_exponent, max_degree)
    if not 1 <= min_degree <= max_degree:
        raise ValueError("need 1 <= min_degree <= max_degree")

    rng = np.random.default_rng(seed)
    # the degree sequence is drawn once; retries below only redraw community
    # sizes, assignments and wiring, so feasibility pressure cannot bias the
    # degree distribution
    degrees = _sample_rounded_powerlaw(rng, n, degree_exponent, float(min_degree), float(max_degree))
    intra_target = np.rint(degrees * (1.0 - mu)).astype(np.int64)
    need = int(intra_target.max()) + 1
    if need > max_community:
        raise RuntimeError(
            f"largest within-community degree {need - 1} cannot fit in any "
            f"community of at most {max_community} nodes; raise max_community"
        )

    last_error = "exhausted attempts"
    for _ in range(max_attempts):
        try:
            sizes = _sample_community_sizes(
                rng, n, community_exponent, min_community, max_community, need, max_tries=200
            )
            assignment = _assign_communities(rng, intra_target, sizes, max_tries=100 * n)
        except RuntimeError as exc:
            last_error = str(exc)
            continue

        # fix odd within-community stub sums by moving one stub to the
        # across-community side of the node with the largest share there
        # (at mu = 0 the stub is dropped instead: no across edges may exist)
        intra = intra_target.copy()
        degrees_used = degrees.copy()

        def shave(victim: int) -> None:
            intra[victim] -= 1
            if mu == 0.0:
                degrees_used[victim] -= 1

        for c in range(len(sizes)):
            members = np.nonzero(assignment == c)[0]
            if intra[members].sum() % 2 == 1:
                shave(members[np.argmax(intra[members])])

        edges: list[tuple[int, int]] = []
        for c in range(len(sizes)):
            members = np.nonzero(assignment == c)[0]
            got = _graphical_wiring(rng, members, intra[members])
            while got is None:
                # several high-degree nodes can land in one community and make
                # its joint demand non-graphical; shave two stubs (parity kept)
                # from the heaviest members onto the across-community side
                for _ in range(2):
                    victim = members[np.argmax(intra[members])]
                    if intra[victim] > 0:
                        shave(victim)
                got = _graphical_wiring(rng, members, intra[members])
            edges.extend(got)

        inter = degrees_used - intra
        inter_stubs = np.repeat(np.arange(n), inter)
        if len(inter_stubs) % 2 == 1:
            victim = int(np.argmax(inter))
            inter[victim] -= 1
            inter_stubs = np.repeat(np.arange(n), inter)
        if len(inter_stubs):
            got = _pair_stubs_with_repair(
                rng,
                inter_stubs,
                lambda u, v: assignment[u] == assignment[v],
                edges,
            )
            if got is None:
                last_error = "across-community wiring stalled"
                continue
            edges.extend(got)
        return Graph(n, edges), assignment
    raise RuntimeError(f"LFR generation failed after {max_attempts} attempts: {last_error}")


def realized_mixing(g: Graph, communities: np.ndarray) -> float:
    """Fraction of edges whose endpoints lie in different communities."""
    if g.num_edges == 0:
        return 0.0
    across = sum(1 for u, v in g.edges if communities[u] != communities[v])
    return across / g.num_edges


# ---------------------------------------------------------------------------
# planted stochastic block model sequences


@dataclass(frozen=True)
class SbmRegime:
    """Stochastic block model regime: block sizes plus within/between densities."""

    block_sizes: tuple[int, ...]
    p_in: float
    p_out: float

    def __post_init__(self):
        if any(s < 1 for s in self.block_sizes):
            raise ValueError("block sizes must be positive")
        for p in (self.p_in, self.p_out):
            if not 0.0 <= p <= 1.0:
                raise ValueError("edge probabilities must be in [0, 1]")

    @property
    def n(self) -> int:
        return sum(self.block_sizes)

    def expected_edges(self) -> float:
        within = sum(s * (s - 1) / 2 for s in self.block_sizes)
        total = self.n * (self.n - 1) / 2
        return within * self.p_in + (total - within) * self.p_out

    def expected_density(self) -> float:
        return self.expected_edges() / (self.n * (self.n - 1) / 2)


def sbm_graph(regime: SbmRegime, seed: int) -> Graph:
    """One sample from a stochastic block model regime."""
    rng = np.random.default_rng(seed)
    n = regime.n
    membership = np.repeat(np.arange(len(regime.block_sizes)), regime.block_sizes)
    iu, ju = np.triu_indices(n, k=1)
    p = np.where(membership[iu] == membership[ju], regime.p_in, regime.p_out)
    keep = rng.random(len(p)) < p
    return Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def planted_state_sequence(
    regimes: Mapping[str, SbmRegime],
    pattern: Sequence[str],
    tau: float = 1.0,
    seed: int = 0,
    density_tol: float = 0.01,
) -> tuple[SnapshotSequence, list[str]]:
    """Sample one snapshot per pattern entry from equal-density SBM regimes.

    Regimes must share the node count and agree on expected edge count within
    ``density_tol`` (relative), so that recovered states cannot come from a
    plain event-rate difference. Returns the snapshot sequence and the true
    regime label per window.
    """
    if not pattern:
        raise ValueError("pattern must be nonempty")
    unknown = set(pattern) - set(regimes)
    if unknown:
        raise ValueError(f"pattern references undefined regimes: {sorted(unknown)}")
    used = sorted(set(pattern))
    n_values = {regimes[k].n for k in used}
    if len(n_values) != 1:
        raise ValueError("all regimes must have the same node count")
    dens = [regimes[k].expected_density() for k in used]
    if max(dens) > 0 and (max(dens) - min(dens)) / max(dens) > density_tol:
        raise ValueError(
            f"regime expected densities differ by more than {density_tol:.1%}: "
            + ", ".join(f"{k}={regimes[k].expected_density():.4f}" for k in used)
        )
    seeds = np.random.default_rng(seed).integers(2**63, size=len(pattern))
    snapshots = [sbm_graph(regimes[k], int(s)) for k, s in zip(pattern, seeds)]
    seq = SnapshotSequence(
        snapshots=snapshots, node_count=n_values.pop(), tau=float(tau), t_origin=0.0
    )
    return seq, list(pattern)


# ---------------------------------------------------------------------------
# model configuration used by the CLI and the comparison harness


@dataclass
class GeneratorConfig:
    """Named graph model plus its parameters; ``sample`` draws one graph."""

    model: str
    n: int
    params: dict = field(default_factory=dict)
    seed: int = 0

    _MODELS = ("rrg", "ba", "lfr", "sbm-planted")

    def __post_init__(self):
        if self.model not in self._MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {self._MODELS}")

    def describe(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.model}(n={self.n}, {inner})" if inner else f"{self.model}(n={self.n})"

    def sample(self, seed: int | None = None) -> Graph:
        s = self.seed if seed is None else seed
        if self.model == "rrg":
            return regular_random_graph(self.n, int(self.params["degree"]), s)
        if self.model == "ba":
            return barabasi_albert_graph(self.n, int(self.params["m0"]), int(self.params["m"]), s)
        if self.model == "lfr":
            kwargs = {k: v for k, v in self.params.items() if k != "mu"}
            g, _ = lfr_graph(self.n, float(self.params["mu"]), seed=s, **kwargs)
            return g
        regime = SbmRegime(
            block_sizes=tuple(self.params["block_sizes"]),
            p_in=float(self.params["p_in"]),
            p_out=float(self.params["p_out"]),
        )
        if regime.n != self.n:
            raise ValueError("block sizes must sum to n")
        return sbm_graph(regime, s)
