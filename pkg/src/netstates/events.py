"""Ingest timestamped contact events and slice them into snapshot graphs."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

import numpy as np

from .graphs import Graph

logger = logging.getLogger(__name__)


class ParseError(ValueError):
    """Malformed event input; carries the 1-based offending line number."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


@dataclass(frozen=True)
class Event:
    """One undirected contact between two labeled nodes at a point in time."""

    time: float
    u: str
    v: str


@dataclass
class EventLog:
    """Time-sorted contact events over a global node index.

    ``nodes`` maps index -> label, ordered by first appearance in the input.
    ``sources``/``targets`` hold node indices aligned with ``times``.
    """

    times: np.ndarray
    sources: np.ndarray
    targets: np.ndarray
    nodes: tuple[str, ...]
    t_origin: float
    self_events_dropped: int = 0

    def __len__(self) -> int:
        return len(self.times)

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def events(self) -> Iterator[Event]:
        for t, u, v in zip(self.times, self.sources, self.targets):
            yield Event(float(t), self.nodes[u], self.nodes[v])

    def __eq__(self, other) -> bool:
        if not isinstance(other, EventLog):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and self.t_origin == other.t_origin
            and np.array_equal(self.times, other.times)
            and np.array_equal(self.sources, other.sources)
            and np.array_equal(self.targets, other.targets)
        )


def _log_from_label_events(
    raw: list[tuple[float, str, str]], t_origin: float | None, dropped: int
) -> EventLog:
    if not raw:
        raise ParseError("no events in input")
    order = sorted(range(len(raw)), key=lambda i: raw[i][0])  # stable for equal times
    index: dict[str, int] = {}
    labels: list[str] = []
    times = np.empty(len(raw))
    sources = np.empty(len(raw), dtype=np.int64)
    targets = np.empty(len(raw), dtype=np.int64)
    for pos, i in enumerate(order):
        t, u, v = raw[i]
        for lab in (u, v):
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
        times[pos] = t
        sources[pos] = index[u]
        targets[pos] = index[v]
    origin = float(times[0]) if t_origin is None else float(t_origin)
    return EventLog(
        times=times,
        sources=sources,
        targets=targets,
        nodes=tuple(labels),
        t_origin=origin,
        self_events_dropped=dropped,
    )


def parse_event_log(
    stream: IO[str] | Iterable[str],
    delimiter: str | None = None,
    t_origin: float | None = None,
) -> EventLog:
    """Parse delimiter-separated "time u v" lines into an :class:`EventLog`.

    ``delimiter=None`` splits on any whitespace; pass "," for comma-separated
    input. Lines starting with '#' and blank lines are skipped. A 4th column
    is ignored with a warning; self-events (u == v) are dropped and counted.
    Times must be nonnegative reals. ``t_origin`` defaults to the first event
    time so that window 1 starts at the first event.

    Raises :class:`ParseError` on malformed lines (with the line number) and
    on input containing no events.
    """
    raw: list[tuple[float, str, str]] = []
    dropped = 0
    extra_column_lines = 0
    for lineno, line in enumerate(stream, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = [p.strip() for p in stripped.split(delimiter)]
        parts = [p for p in parts if p]
        if len(parts) == 4:
            extra_column_lines += 1
            parts = parts[:3]
        if len(parts) != 3:
            raise ParseError(f"expected 3 fields (time u v), got {len(parts)}", lineno)
        try:
            t = float(parts[0])
        except ValueError:
            raise ParseError(f"non-numeric time {parts[0]!r}", lineno) from None
        if not np.isfinite(t) or t < 0:
            raise ParseError(f"time must be a nonnegative finite number, got {parts[0]}", lineno)
        u, v = parts[1], parts[2]
        if u == v:
            dropped += 1
            continue
        raw.append((t, u, v))
    if extra_column_lines:
        logger.warning("ignored 4th (weight) column on %d lines", extra_column_lines)
    if dropped:
        logger.warning("dropped %d self-event(s)", dropped)
    if not raw:
        raise ParseError("no events in input")
    return _log_from_label_events(raw, t_origin, dropped)


def write_event_log(log: EventLog, stream: IO[str]) -> None:
    """Write "time u v" lines; re-parsing reproduces the log exactly."""
    for t, u, v in zip(log.times, log.sources, log.targets):
        stream.write(f"{t:.12g} {log.nodes[u]} {log.nodes[v]}\n")


@dataclass
class SnapshotSequence:
    """One static graph per time window, all on the same global node set."""

    snapshots: list[Graph]
    node_count: int
    tau: float
    t_origin: float = 0.0

    @property
    def t_max(self) -> int:
        return len(self.snapshots)

    def window_start(self, t: int) -> float:
        """Start time of 1-based window ``t``."""
        return self.t_origin + (t - 1) * self.tau

    def event_counts(self) -> np.ndarray:
        """Events per window (sum of snapshot edge weights)."""
        counts = np.zeros(self.t_max)
        for i, g in enumerate(self.snapshots):
            if g.weights:
                counts[i] = sum(g.weights.values())
            else:
                counts[i] = g.num_edges
        return counts


def windowize(log: EventLog, tau: float, t_max: int | None = None) -> SnapshotSequence:
    """Aggregate events into consecutive non-overlapping windows of length tau.

    Window t (1-based) covers [t_origin + (t-1)*tau, t_origin + t*tau) and
    holds an edge {u, v} iff at least one event between u and v falls in it;
    edge weights record event counts. Every snapshot carries the full global
    node set, so windows with no events yield empty graphs on the same nodes.
    The window count is floor((last - t_origin)/tau) + 1 unless overridden,
    which puts an event at the exact final instant into the last window.
    """
    if tau <= 0:
        raise ValueError("window length tau must be positive")
    if len(log) == 0:
        raise ValueError("event log is empty")
    offsets = log.times - log.t_origin
    if offsets[0] < 0:
        raise ValueError("t_origin is later than the first event")
    if t_max is None:
        t_max = int(np.floor(offsets[-1] / tau)) + 1
    elif t_max < 1:
        raise ValueError("t_max override must be positive")

    n = log.num_nodes
    labels = log.nodes
    window_of = np.floor(offsets / tau).astype(np.int64)
    snapshots: list[Graph] = []
    for t in range(t_max):
        sel = np.nonzero(window_of == t)[0]
        counts: dict[tuple[int, int], float] = {}
        for i in sel:
            u = int(log.sources[i])
            v = int(log.targets[i])
            key = (u, v) if u < v else (v, u)
            counts[key] = counts.get(key, 0.0) + 1.0
        snapshots.append(Graph(n, counts.keys(), weights=counts or None, labels=labels))
    skipped = int(np.sum(window_of >= t_max))
    if skipped:
        logger.warning("t_max override drops %d event(s) beyond window %d", skipped, t_max)
    return SnapshotSequence(snapshots=snapshots, node_count=n, tau=float(tau), t_origin=log.t_origin)


def event_rate_series(seq: SnapshotSequence, log: EventLog | None = None) -> np.ndarray:
    """Events per node in each window: count(window t) / N."""
    if log is not None and log.num_nodes != seq.node_count:
        raise ValueError("snapshot sequence was not built from this log")
    return seq.event_counts() / seq.node_count
