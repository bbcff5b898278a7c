import json

import pytest

from netstates.cli import main
from netstates.graphs import read_edge_list


def write_planted_log(path):
    from netstates import SbmRegime, planted_state_sequence, snapshot_sequence_to_event_log, write_event_log

    regimes = {
        "A": SbmRegime(block_sizes=(25, 25, 25, 25), p_in=0.375, p_out=0.012),
        "B": SbmRegime(block_sizes=(100,), p_in=0.1, p_out=0.1),
    }
    seq, _ = planted_state_sequence(regimes, list("ABAB"), tau=60.0, seed=1)
    log = snapshot_sequence_to_event_log(seq)
    with open(path, "w", encoding="utf-8") as fh:
        write_event_log(log, fh)


def test_states_subcommand(tmp_path, capsys):
    events = tmp_path / "events.txt"
    write_planted_log(events)
    out_dir = tmp_path / "out"
    code = main(
        ["states", "--input", str(events), "--tau", "60", "--out-dir", str(out_dir)]
    )
    assert code == 0
    assert (out_dir / "states.csv").exists()
    assert (out_dir / "summary.json").exists()
    assert "states=2" in capsys.readouterr().out


def test_states_with_config_file(tmp_path):
    events = tmp_path / "events.txt"
    write_planted_log(events)
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({"input_path": str(events), "out_dir": str(tmp_path / "o"), "tau": 60.0}))
    code = main(
        ["states", "--input", str(events), "--tau", "60",
         "--out-dir", str(tmp_path / "o2"), "--config", str(config)]
    )
    assert code == 0
    assert (tmp_path / "o2" / "states.csv").exists()  # flags override the config file


def test_distance_subcommand(tmp_path):
    events = tmp_path / "events.txt"
    write_planted_log(events)
    out_dir = tmp_path / "out"
    code = main(
        ["distance", "--input", str(events), "--tau", "60", "--out-dir", str(out_dir),
         "--measure", "spec-u", "--laplacian", "comb"]
    )
    assert code == 0
    header = (out_dir / "distances.csv").read_text().splitlines()[0]
    assert header == "1,2,3,4"
    payload = json.loads((out_dir / "distances.json").read_text())
    assert payload["measure"]["tag"] == "spectrum-unnorm"
    assert payload["measure"]["laplacian"] == "combinatorial"


def test_usage_error_exit_code_1(capsys):
    assert main(["states", "--tau", "60"]) == 1  # missing --input
    assert main(["frobnicate"]) == 1
    assert main(["states", "--input", "x", "--tau", "60", "--out-dir", "y",
                 "--measure", "nope"]) == 1


def test_data_error_exit_code_2(tmp_path):
    events = tmp_path / "events.txt"
    events.write_text("0 a b\n1 b c\n")
    code = main(["states", "--input", str(events), "--tau", "100",
                 "--out-dir", str(tmp_path / "out")])
    assert code == 2  # single window
    code = main(["states", "--input", str(tmp_path / "missing.txt"), "--tau", "10",
                 "--out-dir", str(tmp_path / "out")])
    assert code == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("zero a b\n")
    code = main(["states", "--input", str(bad), "--tau", "10",
                 "--out-dir", str(tmp_path / "out")])
    assert code == 2


def test_generate_graph_and_json(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["generate", "--model", "rrg:degree=4", "--n", "20",
                 "--seed", "3", "--out", str(out)]) == 0
    with open(out) as fh:
        g = read_edge_list(fh)
    assert g.n == 20 and g.num_edges == 40

    out_json = tmp_path / "g.json"
    assert main(["generate", "--model", "ba:m0=2,m=2", "--n", "15", "--json",
                 "--out", str(out_json)]) == 0
    payload = json.loads(out_json.read_text())
    assert payload["n"] == 15


def test_generate_planted_then_states_round_trip(tmp_path):
    events = tmp_path / "planted.txt"
    code = main(["generate", "--model", "planted", "--pattern", "ABABAB",
                 "--tau", "60", "--seed", "2", "--out", str(events)])
    assert code == 0
    labels_file = tmp_path / "planted.txt.labels"
    assert labels_file.read_text().strip() == "ABABAB"
    out_dir = tmp_path / "out"
    code = main(["states", "--input", str(events), "--tau", "60", "--out-dir", str(out_dir)])
    assert code == 0
    lines = (out_dir / "states.csv").read_text().strip().splitlines()[1:]
    states = [ln.split(",")[2] for ln in lines]
    assert states == ["1", "2", "1", "2", "1", "2"]


def test_generate_school_day(tmp_path):
    out = tmp_path / "school.txt"
    # smallest variant still exercises the writer end to end
    code = main(["generate", "--model", "school-day", "--seed", "1", "--out", str(out)])
    assert code == 0
    assert out.stat().st_size > 0


def test_generate_planted_requires_pattern(tmp_path):
    assert main(["generate", "--model", "planted", "--out", str(tmp_path / "x")]) == 1


def test_compare_models_subcommand(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["compare-models", "--model-a", "rrg:degree=2", "--model-b", "rrg:degree=2",
                 "--n", "20", "--pairs", "3", "--measure", "edit", "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload[0]["cross"]["scaled_mean"] == 1.0
    assert "scaled=" in capsys.readouterr().out


def test_compare_models_bad_spec():
    assert main(["compare-models", "--model-a", "rrg:degree", "--model-b", "rrg:degree=2",
                 "--n", "10", "--pairs", "2"]) == 1
