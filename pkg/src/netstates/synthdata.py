"""Synthetic event logs for demos and end-to-end pipeline checks."""

from __future__ import annotations

import numpy as np

from .events import EventLog, SnapshotSequence, _log_from_label_events


def snapshot_sequence_to_event_log(seq: SnapshotSequence) -> EventLog:
    """Turn a snapshot sequence into events placed at window midpoints.

    Each edge of window t becomes one event at (t - 0.5) * tau past the
    sequence origin, so re-windowing the log with the same tau reproduces the
    snapshots (windows re-anchor to the first event, which shifts the grid by
    half a window but keeps one window per original window).
    """
    raw: list[tuple[float, str, str]] = []
    for t, g in enumerate(seq.snapshots, start=1):
        time = seq.t_origin + (t - 0.5) * seq.tau
        labels = g.node_labels()
        for u, v in sorted(g.edges):
            count = int(g.weights.get((u, v), 1)) if g.weights else 1
            for _ in range(count):
                raw.append((time, labels[u], labels[v]))
    if not raw:
        raise ValueError("snapshot sequence contains no edges")
    return _log_from_label_events(raw, t_origin=None, dropped=0)


def synthetic_school_log(
    num_classes: int = 8,
    class_size: int = 30,
    num_teachers: int = 2,
    windows_per_day: int = 25,
    days: int = 2,
    tau: float = 1200.0,
    lunch_windows: tuple[int, ...] = (12, 13, 14),
    events_per_window: int = 1500,
    seed: int = 0,
) -> EventLog:
    """Two synthetic school days of face-to-face style proximity events.

    Defaults give 242 distinct labels (8 classes of 30 plus 2 teachers) and
    50 windows of 20 minutes. During class windows contacts stay within a
    class (with occasional teacher visits); during lunch windows pupils mix
    across classes at the same overall event rate, so the two regimes differ
    in contact structure rather than in activity. The first event is pinned
    to time 0 and the last to the final window, fixing the window count.
    """
    if num_classes < 2 or class_size < 2:
        raise ValueError("need at least two classes of at least two pupils")
    rng = np.random.default_rng(seed)
    pupils = [
        [f"c{c + 1:02d}p{p + 1:02d}" for p in range(class_size)] for c in range(num_classes)
    ]
    teachers = [f"teacher{k + 1}" for k in range(num_teachers)]
    t_windows = windows_per_day * days
    horizon = t_windows * tau

    raw: list[tuple[float, str, str]] = []

    # coverage: every node gets one event scattered over day-1 class windows,
    # so the full label set appears for any seed without distorting one window
    class_day1 = [w for w in range(windows_per_day) if w not in lunch_windows]
    first = True
    for group in pupils:
        for i in range(0, len(group) - 1, 2):
            w = 0 if first else int(rng.choice(class_day1))
            t = 0.0 if first else w * tau + rng.random() * tau
            raw.append((t, group[i], group[i + 1]))
            first = False
        if len(group) % 2 == 1:
            w = int(rng.choice(class_day1))
            raw.append((w * tau + rng.random() * tau, group[-1], group[0]))
    for k, teacher in enumerate(teachers):
        w = int(rng.choice(class_day1))
        raw.append((w * tau + rng.random() * tau, teacher, pupils[k % num_classes][0]))

    for w in range(t_windows):
        start = w * tau
        day_window = w % windows_per_day
        is_lunch = day_window in lunch_windows
        count = int(rng.poisson(events_per_window))
        times = np.sort(start + rng.random(count) * tau)
        for t in times:
            if is_lunch:
                c1, c2 = rng.choice(num_classes, size=2, replace=False)
                u = pupils[c1][rng.integers(class_size)]
                v = pupils[c2][rng.integers(class_size)]
            elif rng.random() < 0.03:
                u = teachers[rng.integers(num_teachers)]
                v = pupils[rng.integers(num_classes)][rng.integers(class_size)]
            else:
                c = int(rng.integers(num_classes))
                i, j = rng.choice(class_size, size=2, replace=False)
                u, v = pupils[c][i], pupils[c][j]
            raw.append((float(t), u, v))

    # pin the last event near the end of the final window
    raw.append((horizon - 1.0, pupils[0][0], pupils[1][0]))
    return _log_from_label_events(raw, t_origin=0.0, dropped=0)
