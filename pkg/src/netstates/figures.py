"""Self-contained SVG renderings of the similarity matrix and the state timeline.

Hand-built SVG keeps the output byte-deterministic for a given input, which
makes figure artifacts diffable and testable.
"""

from __future__ import annotations

import numpy as np

from .clustering import StateSequence

_COLORMAPS = {
    # value 0 -> white, 1 -> full color
    "gray": (0, 0, 0),
    "blue": (8, 48, 107),
    "red": (103, 0, 13),
}


def _hex_color(value: float, full: tuple[int, int, int]) -> str:
    v = min(max(value, 0.0), 1.0)
    r = round(255 + (full[0] - 255) * v)
    g = round(255 + (full[1] - 255) * v)
    b = round(255 + (full[2] - 255) * v)
    return f"#{r:02x}{g:02x}{b:02x}"


def render_heatmap(
    sim: np.ndarray,
    cell_size: int = 8,
    tick_every: int = 5,
    colormap: str = "gray",
) -> str:
    """Similarity matrix as an SVG cell grid; window 1 is top-left.

    Entries must lie in [0, 1]; 0 renders white and 1 the full colormap
    color. Axis tick labels appear every ``tick_every`` windows.
    """
    sim = np.asarray(sim, dtype=float)
    if sim.ndim != 2 or sim.shape[0] != sim.shape[1]:
        raise ValueError(f"similarity matrix must be square, got shape {sim.shape}")
    if sim.size and (sim.min() < -1e-12 or sim.max() > 1 + 1e-12):
        raise ValueError("similarity entries must lie in [0, 1]")
    if colormap not in _COLORMAPS:
        raise ValueError(f"unknown colormap {colormap!r}; expected one of {sorted(_COLORMAPS)}")
    full = _COLORMAPS[colormap]
    t = sim.shape[0]
    margin = 28
    size = margin + t * cell_size + 8
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    for i in range(t):
        for j in range(t):
            color = _hex_color(sim[i, j], full)
            x = margin + j * cell_size
            y = margin + i * cell_size
            out.append(
                f'<rect x="{x}" y="{y}" width="{cell_size}" height="{cell_size}" fill="{color}"/>'
            )
    for w in range(tick_every, t + 1, tick_every):
        pos = margin + (w - 0.5) * cell_size
        out.append(
            f'<text x="{pos:.1f}" y="{margin - 6}" font-size="9" text-anchor="middle" '
            f'font-family="sans-serif">{w}</text>'
        )
        out.append(
            f'<text x="{margin - 6}" y="{pos + 3:.1f}" font-size="9" text-anchor="end" '
            f'font-family="sans-serif">{w}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_timeline(
    states: StateSequence | np.ndarray,
    rates: np.ndarray,
    tick_every: int = 5,
) -> str:
    """Two stacked panels: per-window event-rate bars and the state step plot."""
    labels = states.labels if isinstance(states, StateSequence) else np.asarray(states, dtype=np.int64)
    rates = np.asarray(rates, dtype=float)
    if len(labels) != len(rates):
        raise ValueError(f"states ({len(labels)}) and rates ({len(rates)}) lengths differ")
    t = len(labels)
    bar_w = 10
    panel_h = 90
    gap = 26
    margin_left = 46
    margin_top = 14
    width = margin_left + t * bar_w + 12
    height = margin_top + 2 * panel_h + gap + 30
    max_rate = float(rates.max()) if t else 0.0
    num_states = int(labels.max()) if t else 0

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]

    # events-per-node bars; an all-zero series keeps the empty axis
    base_y = margin_top + panel_h
    out.append(
        f'<line x1="{margin_left}" y1="{base_y}" x2="{margin_left + t * bar_w}" y2="{base_y}" '
        f'stroke="black" stroke-width="1"/>'
    )
    out.append(
        f'<line x1="{margin_left}" y1="{margin_top}" x2="{margin_left}" y2="{base_y}" '
        f'stroke="black" stroke-width="1"/>'
    )
    out.append(
        f'<text x="10" y="{margin_top + panel_h / 2:.1f}" font-size="9" font-family="sans-serif" '
        f'transform="rotate(-90 10 {margin_top + panel_h / 2:.1f})" text-anchor="middle">events/node</text>'
    )
    if max_rate > 0:
        for w in range(t):
            h = (rates[w] / max_rate) * (panel_h - 8)
            x = margin_left + w * bar_w
            out.append(
                f'<rect x="{x + 1}" y="{base_y - h:.2f}" width="{bar_w - 2}" height="{h:.2f}" '
                f'fill="#4878a8"/>'
            )
        out.append(
            f'<text x="{margin_left - 4}" y="{margin_top + 10}" font-size="8" text-anchor="end" '
            f'font-family="sans-serif">{max_rate:.3g}</text>'
        )

    # state step plot
    top2 = margin_top + panel_h + gap
    base2 = top2 + panel_h
    out.append(
        f'<line x1="{margin_left}" y1="{base2}" x2="{margin_left + t * bar_w}" y2="{base2}" '
        f'stroke="black" stroke-width="1"/>'
    )
    out.append(
        f'<line x1="{margin_left}" y1="{top2}" x2="{margin_left}" y2="{base2}" '
        f'stroke="black" stroke-width="1"/>'
    )
    out.append(
        f'<text x="10" y="{top2 + panel_h / 2:.1f}" font-size="9" font-family="sans-serif" '
        f'transform="rotate(-90 10 {top2 + panel_h / 2:.1f})" text-anchor="middle">state</text>'
    )
    if num_states:
        span = max(num_states - 1, 1)

        def level_y(state: int) -> float:
            return base2 - 10 - (state - 1) / span * (panel_h - 24)

        points = []
        for w in range(t):
            y = level_y(int(labels[w]))
            points.append(f"{margin_left + w * bar_w},{y:.2f}")
            points.append(f"{margin_left + (w + 1) * bar_w},{y:.2f}")
        out.append(
            f'<polyline points="{" ".join(points)}" fill="none" stroke="#b03030" stroke-width="2"/>'
        )
        for s in range(1, num_states + 1):
            out.append(
                f'<text x="{margin_left - 4}" y="{level_y(s) + 3:.2f}" font-size="8" '
                f'text-anchor="end" font-family="sans-serif">{s}</text>'
            )

    for w in range(tick_every, t + 1, tick_every):
        x = margin_left + (w - 0.5) * bar_w
        out.append(
            f'<text x="{x:.1f}" y="{base2 + 14}" font-size="9" text-anchor="middle" '
            f'font-family="sans-serif">{w}</text>'
        )
    out.append(
        f'<text x="{margin_left + t * bar_w / 2:.1f}" y="{base2 + 27}" font-size="9" '
        f'text-anchor="middle" font-family="sans-serif">time window</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
