import json

import numpy as np
import pytest

from netstates import (
    Measure,
    PipelineConfig,
    SbmRegime,
    parse_event_log,
    planted_state_sequence,
    read_distance_csv,
    run_pipeline,
    select_num_states,
    single_linkage,
    snapshot_sequence_to_event_log,
    write_event_log,
)
from netstates.pipeline import config_from_dict

REGIMES = {
    "A": SbmRegime(block_sizes=(25, 25, 25, 25), p_in=0.375, p_out=0.012),
    "B": SbmRegime(block_sizes=(100,), p_in=0.1, p_out=0.1),
}

ALL_ARTIFACTS = {
    "distances.csv",
    "similarity.csv",
    "states.csv",
    "dunn_curve.csv",
    "event_rate.csv",
    "dendrogram.json",
    "summary.json",
    "heatmap.svg",
    "timeline.svg",
}


def write_planted_log(path, pattern, seed=0):
    seq, truth = planted_state_sequence(REGIMES, list(pattern), tau=60.0, seed=seed)
    log = snapshot_sequence_to_event_log(seq)
    with open(path, "w", encoding="utf-8") as fh:
        write_event_log(log, fh)
    return truth


def read_states_csv(path):
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "window,start_time,state"
    return [int(ln.split(",")[2]) for ln in lines[1:]]


def test_pipeline_planted_two_states(tmp_path):
    input_path = tmp_path / "events.txt"
    truth = write_planted_log(input_path, "ABABABAB", seed=2)
    cfg = PipelineConfig(input_path=input_path, out_dir=tmp_path / "out", tau=60.0)
    result = run_pipeline(cfg)
    assert set(result.files) == ALL_ARTIFACTS
    labels = read_states_csv(tmp_path / "out" / "states.csv")
    assert result.states.num_states == 2
    expected = [1 if t == "A" else 2 for t in truth]
    assert labels == expected


def test_pipeline_single_window_errors(tmp_path):
    input_path = tmp_path / "events.txt"
    input_path.write_text("0 a b\n1 b c\n")
    cfg = PipelineConfig(input_path=input_path, out_dir=tmp_path / "out", tau=100.0)
    with pytest.raises(ValueError, match="t_max < 2"):
        run_pipeline(cfg)


def test_pipeline_byte_determinism(tmp_path):
    input_path = tmp_path / "events.txt"
    write_planted_log(input_path, "ABAB", seed=5)
    cfg = PipelineConfig(input_path=input_path, out_dir=tmp_path / "out", tau=60.0)
    outputs = []
    for _ in range(2):
        result = run_pipeline(cfg)
        outputs.append({name: path.read_bytes() for name, path in result.files.items()})
    assert outputs[0] == outputs[1]


def test_pipeline_round_trip_distances_to_states(tmp_path):
    input_path = tmp_path / "events.txt"
    write_planted_log(input_path, "AABBAABB", seed=7)
    out = tmp_path / "out"
    cfg = PipelineConfig(input_path=input_path, out_dir=out, tau=60.0)
    result = run_pipeline(cfg)
    with open(out / "distances.csv", "r", encoding="utf-8") as fh:
        dm = read_distance_csv(fh, cfg.measure)
    states = select_num_states(dm, single_linkage(dm), c_max=cfg.c_max)
    assert np.array_equal(states.labels, result.states.labels)
    assert states.num_states == result.states.num_states


def test_pipeline_degenerate_all_zero_distances(tmp_path, caplog):
    input_path = tmp_path / "events.txt"
    # identical snapshot in every window: all spectral distances are zero
    lines = [f"{10 * w + 5} a b" for w in range(6)]
    input_path.write_text("\n".join(lines) + "\n")
    cfg = PipelineConfig(input_path=input_path, out_dir=tmp_path / "out", tau=10.0)
    result = run_pipeline(cfg)
    assert result.degenerate
    assert result.states.num_states == 1
    assert list(result.states.labels) == [1] * 6
    assert "similarity.csv" not in result.files
    assert "heatmap.svg" not in result.files
    assert "states.csv" in result.files
    summary = json.loads((tmp_path / "out" / "summary.json").read_text())
    assert summary["degenerate"] is True
    assert "similarity transform" in summary["diagnostic"]


def test_pipeline_summary_contents(tmp_path):
    input_path = tmp_path / "events.txt"
    write_planted_log(input_path, "ABAB", seed=3)
    cfg = PipelineConfig(
        input_path=input_path,
        out_dir=tmp_path / "out",
        tau=60.0,
        measure=Measure("spectrum-unnorm", laplacian="normalized"),
    )
    result = run_pipeline(cfg)
    summary = json.loads((tmp_path / "out" / "summary.json").read_text())
    assert summary["num_nodes"] == 100
    assert summary["t_max"] == 4
    assert summary["num_states"] == result.states.num_states
    assert sum(summary["state_window_counts"].values()) == 4
    assert summary["measure"] == "spectrum-unnorm(normalized)"


def test_pipeline_format_subsets(tmp_path):
    input_path = tmp_path / "events.txt"
    write_planted_log(input_path, "ABAB", seed=4)
    cfg = PipelineConfig(
        input_path=input_path, out_dir=tmp_path / "out", tau=60.0, formats=("csv",)
    )
    result = run_pipeline(cfg)
    assert set(result.files) == {
        "distances.csv",
        "similarity.csv",
        "states.csv",
        "dunn_curve.csv",
        "event_rate.csv",
    }
    with pytest.raises(ValueError, match="unknown output formats"):
        PipelineConfig(input_path=input_path, out_dir=tmp_path, tau=1.0, formats=("pdf",))


def test_event_rate_csv_matches_log(tmp_path):
    input_path = tmp_path / "events.txt"
    input_path.write_text("0 a b\n1 a b\n2 b c\n15 a c\n")
    cfg = PipelineConfig(input_path=input_path, out_dir=tmp_path / "out", tau=10.0)
    result = run_pipeline(cfg)
    lines = (tmp_path / "out" / "event_rate.csv").read_text().strip().splitlines()
    rates = [float(ln.split(",")[2]) for ln in lines[1:]]
    assert rates == pytest.approx([1.0, 1.0 / 3.0], abs=1e-11)


def test_config_from_dict_with_overrides(tmp_path):
    payload = {
        "input_path": "x.txt",
        "out_dir": "out",
        "tau": 20.0,
        "measure": {"tag": "jsd", "beta": 0.1},
        "c_max": 5,
    }
    cfg = config_from_dict(payload, tau=40.0)
    assert cfg.tau == 40.0
    assert cfg.measure.tag == "jsd"
    assert cfg.measure.beta == 0.1
    assert cfg.measure.laplacian == "combinatorial"
    assert cfg.c_max == 5
