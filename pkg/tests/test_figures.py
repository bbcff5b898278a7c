import numpy as np
import pytest

from netstates import render_heatmap, render_timeline
from netstates.clustering import StateSequence


def test_heatmap_cell_count_minimal():
    svg = render_heatmap(np.eye(2))
    # one background rect plus exactly t*t cells
    assert svg.count("<rect") == 1 + 4


def test_heatmap_identity_saturation():
    svg = render_heatmap(np.eye(2))
    assert svg.count('fill="#000000"') == 2  # diagonal fully saturated
    assert svg.count('fill="#ffffff"') == 2  # off-diagonal white


def test_heatmap_deterministic_bytes():
    rng = np.random.default_rng(0)
    sim = rng.random((7, 7))
    sim = (sim + sim.T) / 2
    np.fill_diagonal(sim, 1.0)
    assert render_heatmap(sim) == render_heatmap(sim)


def test_heatmap_tick_labels_every_five():
    sim = np.eye(12)
    svg = render_heatmap(sim)
    assert ">5</text>" in svg and ">10</text>" in svg
    assert ">12</text>" not in svg


def test_heatmap_rejects_bad_input():
    with pytest.raises(ValueError, match="square"):
        render_heatmap(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="0, 1"):
        render_heatmap(np.full((2, 2), 1.5))
    with pytest.raises(ValueError, match="colormap"):
        render_heatmap(np.eye(2), colormap="plasma")


def states(labels):
    labels = np.asarray(labels)
    return StateSequence(labels=labels, num_states=int(labels.max()), dunn_curve={})


def test_timeline_constant_labels_flat_step():
    svg = render_timeline(states([1, 1, 1, 1]), np.array([1.0, 2.0, 1.0, 2.0]))
    polyline = [ln for ln in svg.splitlines() if "polyline" in ln][0]
    ys = {pt.split(",")[1] for pt in polyline.split('points="')[1].split('"')[0].split()}
    assert len(ys) == 1


def test_timeline_alternating_labels_two_levels():
    svg = render_timeline(states([1, 2, 1, 2]), np.ones(4))
    polyline = [ln for ln in svg.splitlines() if "polyline" in ln][0]
    ys = {pt.split(",")[1] for pt in polyline.split('points="')[1].split('"')[0].split()}
    assert len(ys) == 2


def test_timeline_zero_rates_keeps_axis():
    svg = render_timeline(states([1, 2]), np.zeros(2))
    assert svg.count("<line") >= 4  # both panel axes survive
    assert 'fill="#4878a8"' not in svg  # no bars


def test_timeline_length_mismatch():
    with pytest.raises(ValueError, match="lengths differ"):
        render_timeline(states([1, 2]), np.ones(3))


def test_timeline_deterministic():
    s = states([1, 2, 2, 1, 3])
    r = np.array([0.5, 1.0, 2.0, 0.0, 1.25])
    assert render_timeline(s, r) == render_timeline(s, r)
