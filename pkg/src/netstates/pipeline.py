"""End-to-end pipeline: events -> snapshots -> distances -> states -> artifacts."""

from __future__ import annotations

import io
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .clustering import (
    Dendrogram,
    StateSequence,
    dendrogram_to_json,
    select_num_states,
    single_linkage,
)
from .distances import (
    DistanceMatrix,
    Measure,
    pairwise_distance_matrix,
    to_similarity,
    write_distance_csv,
)
from .events import EventLog, SnapshotSequence, event_rate_series, parse_event_log, windowize
from .figures import render_heatmap, render_timeline

logger = logging.getLogger(__name__)

ARTIFACT_FORMATS = ("csv", "json", "svg")


@dataclass
class PipelineConfig:
    """Everything one run needs: input, windowing, measure, clustering, output."""

    input_path: str | Path
    out_dir: str | Path
    tau: float
    delimiter: str | None = None
    t_origin: float | None = None
    t_max: int | None = None
    measure: Measure = field(default_factory=lambda: Measure("spectrum-norm", laplacian="normalized"))
    c_max: int | None = None
    seed: int = 0
    formats: tuple[str, ...] = ARTIFACT_FORMATS
    colormap: str = "gray"

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError("tau must be positive")
        bad = set(self.formats) - set(ARTIFACT_FORMATS)
        if bad:
            raise ValueError(f"unknown output formats: {sorted(bad)}")

    def to_dict(self) -> dict:
        return {
            "input_path": str(self.input_path),
            "out_dir": str(self.out_dir),
            "tau": self.tau,
            "delimiter": self.delimiter,
            "t_origin": self.t_origin,
            "t_max": self.t_max,
            "measure": self.measure.to_dict(),
            "c_max": self.c_max,
            "seed": self.seed,
            "formats": list(self.formats),
            "colormap": self.colormap,
        }


def config_from_dict(payload: dict, **overrides) -> PipelineConfig:
    """Build a config from a JSON-style dict; keyword overrides win."""
    data = dict(payload)
    data.update({k: v for k, v in overrides.items() if v is not None})
    measure = data.get("measure", {"tag": "spectrum-norm", "laplacian": "normalized"})
    if isinstance(measure, dict):
        tag = measure.get("tag", "spectrum-norm")
        default_kind = "combinatorial" if tag == "jsd" else "normalized"
        measure = Measure(
            tag=tag,
            laplacian=measure.get("laplacian", default_kind),
            beta=measure.get("beta", 1.0),
            n_eig=measure.get("n_eig"),
        )
    formats = tuple(data.get("formats", ARTIFACT_FORMATS))
    return PipelineConfig(
        input_path=data["input_path"],
        out_dir=data["out_dir"],
        tau=float(data["tau"]),
        delimiter=data.get("delimiter"),
        t_origin=data.get("t_origin"),
        t_max=data.get("t_max"),
        measure=measure,
        c_max=data.get("c_max"),
        seed=int(data.get("seed", 0)),
        formats=formats,
        colormap=data.get("colormap", "gray"),
    )


@dataclass
class PipelineResult:
    config: PipelineConfig
    log: EventLog
    seq: SnapshotSequence
    dm: DistanceMatrix
    dend: Dendrogram
    states: StateSequence
    rates: np.ndarray
    degenerate: bool
    files: dict[str, Path]


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def run_pipeline(cfg: PipelineConfig) -> PipelineResult:
    """Run the full analysis and write the artifact set to ``cfg.out_dir``.

    Artifacts: distances.csv, similarity.csv, states.csv, dunn_curve.csv,
    event_rate.csv, dendrogram.json, summary.json, heatmap.svg, timeline.svg
    (filtered by ``cfg.formats``). When every pairwise distance is zero the
    similarity transform (and the heatmap that needs it) is undefined, so
    these are skipped, a single state is reported, and the diagnostic lands
    in the log and summary.
    """
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    with open(cfg.input_path, "r", encoding="utf-8") as fh:
        log = parse_event_log(fh, delimiter=cfg.delimiter, t_origin=cfg.t_origin)
    seq = windowize(log, cfg.tau, t_max=cfg.t_max)
    rates = event_rate_series(seq, log)
    dm = pairwise_distance_matrix(seq, cfg.measure)
    dend = single_linkage(dm)

    degenerate = bool(dm.values.max() == 0.0)
    diagnostic = None
    if degenerate:
        diagnostic = (
            "all pairwise distances are zero, so the similarity transform "
            "sim = 1 - d/max(d) is undefined; skipping similarity.csv and "
            "heatmap.svg and reporting a single state"
        )
        logger.warning(diagnostic)
        states = StateSequence(
            labels=np.ones(seq.t_max, dtype=np.int64), num_states=1, dunn_curve={}
        )
        sim = None
    else:
        states = select_num_states(dm, dend, c_max=cfg.c_max)
        sim = to_similarity(dm)

    files: dict[str, Path] = {}

    def emit(name: str, text: str) -> None:
        path = out_dir / name
        path.write_text(text, encoding="utf-8")
        files[name] = path

    if "csv" in cfg.formats:
        buf = io.StringIO()
        write_distance_csv(dm, buf)
        emit("distances.csv", buf.getvalue())

        if sim is not None:
            header = ",".join(str(i) for i in range(1, seq.t_max + 1))
            rows = [",".join(_fmt(x) for x in row) for row in sim]
            emit("similarity.csv", header + "\n" + "\n".join(rows) + "\n")

        lines = ["window,start_time,state"]
        for t in range(1, seq.t_max + 1):
            lines.append(f"{t},{_fmt(seq.window_start(t))},{states.labels[t - 1]}")
        emit("states.csv", "\n".join(lines) + "\n")

        lines = ["num_states,dunn_index"]
        for c, v in sorted(states.dunn_curve.items()):
            lines.append(f"{c},{'inf' if math.isinf(v) else _fmt(v)}")
        emit("dunn_curve.csv", "\n".join(lines) + "\n")

        lines = ["window,start_time,events_per_node"]
        for t in range(1, seq.t_max + 1):
            lines.append(f"{t},{_fmt(seq.window_start(t))},{_fmt(rates[t - 1])}")
        emit("event_rate.csv", "\n".join(lines) + "\n")

    if "json" in cfg.formats:
        emit("dendrogram.json", dendrogram_to_json(dend) + "\n")
        state_counts = {
            str(s): int(np.sum(states.labels == s)) for s in range(1, states.num_states + 1)
        }
        summary = {
            "config": cfg.to_dict(),
            "measure": cfg.measure.label(),
            "num_nodes": seq.node_count,
            "t_max": seq.t_max,
            "num_events": len(log),
            "self_events_dropped": log.self_events_dropped,
            "num_states": states.num_states,
            "state_window_counts": state_counts,
            "degenerate": degenerate,
            "diagnostic": diagnostic,
        }
        emit("summary.json", json.dumps(summary, sort_keys=True, indent=2) + "\n")

    if "svg" in cfg.formats:
        if sim is not None:
            emit("heatmap.svg", render_heatmap(sim, colormap=cfg.colormap))
        emit("timeline.svg", render_timeline(states, rates))

    return PipelineResult(
        config=cfg,
        log=log,
        seq=seq,
        dm=dm,
        dend=dend,
        states=states,
        rates=rates,
        degenerate=degenerate,
        files=files,
    )
