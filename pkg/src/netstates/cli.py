"""Command-line interface.

Subcommands: ``states`` (full pipeline), ``distance`` (distance matrix only),
``compare-models`` (model discrimination harness), ``generate`` (synthetic
data emission). Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .distances import Measure, pairwise_distance_matrix, write_distance_csv, write_distance_json
from .events import ParseError, parse_event_log, windowize, write_event_log
from .experiments import run_model_comparison, write_report_json
from .generators import GeneratorConfig, SbmRegime, planted_state_sequence
from .graphs import write_edge_list, graph_to_json
from .pipeline import PipelineConfig, config_from_dict, run_pipeline
from .synthdata import snapshot_sequence_to_event_log, synthetic_school_log

_MEASURE_ALIASES = {
    "edit": "edit",
    "deltacon": "deltacon",
    "jsd": "jsd",
    "spec-u": "spectrum-unnorm",
    "spec-n": "spectrum-norm",
}
_LAPLACIAN_ALIASES = {"comb": "combinatorial", "norm": "normalized"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; this tool reserves 2 for data errors
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _add_measure_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--measure", choices=sorted(_MEASURE_ALIASES), default="spec-n",
                   help="distance measure (default: spec-n)")
    p.add_argument("--laplacian", choices=sorted(_LAPLACIAN_ALIASES), default=None,
                   help="Laplacian kind for spectral measures "
                        "(default: norm for spec-u/spec-n, comb for jsd)")
    p.add_argument("--beta", type=float, default=1.0, help="diffusion time for jsd (default: 1)")
    p.add_argument("--n-eig", type=int, default=None, help="eigenvalues compared (default: all)")


def _measure_from_args(args) -> Measure:
    tag = _MEASURE_ALIASES[args.measure]
    if args.laplacian is not None:
        kind = _LAPLACIAN_ALIASES[args.laplacian]
    else:
        kind = "combinatorial" if tag == "jsd" else "normalized"
    return Measure(tag=tag, laplacian=kind, beta=args.beta, n_eig=args.n_eig)


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="event log file (time u v per line)")
    p.add_argument("--delimiter", default=None,
                   help="field delimiter (default: any whitespace; use ',' for CSV)")
    p.add_argument("--tau", type=float, required=True, help="window length in seconds")
    p.add_argument("--t-origin", type=float, default=None,
                   help="window grid origin (default: first event time)")
    p.add_argument("--t-max", type=int, default=None, help="override the window count")


def _parse_model_spec(spec: str, n: int, seed: int) -> GeneratorConfig:
    """Parse 'name:key=value,key=value' into a GeneratorConfig."""
    name, _, rest = spec.partition(":")
    params: dict = {}
    if rest:
        for item in rest.split(","):
            key, _, value = item.partition("=")
            if not _ or not key:
                raise _UsageError(f"bad model parameter {item!r} in {spec!r}")
            key = key.strip().replace("-", "_")
            try:
                params[key] = json.loads(value)
            except json.JSONDecodeError:
                params[key] = value
    try:
        return GeneratorConfig(model=name, n=n, params=params, seed=seed)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _cmd_states(args) -> int:
    base = {}
    if args.config:
        base = json.loads(Path(args.config).read_text(encoding="utf-8"))
    cfg = config_from_dict(
        base,
        input_path=args.input,
        out_dir=args.out_dir,
        tau=args.tau,
        delimiter=args.delimiter,
        t_origin=args.t_origin,
        t_max=args.t_max,
        measure=_measure_from_args(args).to_dict(),
        c_max=args.c_max,
        seed=args.seed,
        formats=tuple(args.format.split(",")) if args.format else None,
    )
    result = run_pipeline(cfg)
    print(
        f"N={result.seq.node_count} t_max={result.seq.t_max} "
        f"states={result.states.num_states} -> {cfg.out_dir}"
    )
    return 0


def _cmd_distance(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        log = parse_event_log(fh, delimiter=args.delimiter, t_origin=args.t_origin)
    seq = windowize(log, args.tau, t_max=args.t_max)
    dm = pairwise_distance_matrix(seq, _measure_from_args(args))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "distances.csv", "w", encoding="utf-8") as fh:
        write_distance_csv(dm, fh)
    with open(out_dir / "distances.json", "w", encoding="utf-8") as fh:
        write_distance_json(dm, fh)
    print(f"t_max={dm.t_max} -> {out_dir / 'distances.csv'}")
    return 0


def _cmd_compare_models(args) -> int:
    model_a = _parse_model_spec(args.model_a, args.n, args.seed)
    model_b = _parse_model_spec(args.model_b, args.n, args.seed)
    report = run_model_comparison(
        model_a, model_b, _measure_from_args(args), pairs=args.pairs, seed=args.seed
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_report_json(report, fh)
    for name in ("within_a", "within_b", "cross"):
        stats = report.stats(name)
        print(
            f"{name:9s} mean={stats.mean:.6g} std={stats.std:.6g} "
            f"scaled={report.scaled_mean(name):.4f}"
        )
    return 0


def _cmd_generate(args) -> int:
    out = Path(args.out)
    if args.model == "school-day":
        log = synthetic_school_log(seed=args.seed)
        with open(out, "w", encoding="utf-8") as fh:
            write_event_log(log, fh)
        print(f"N={log.num_nodes} events={len(log)} -> {out}")
        return 0
    if args.model == "planted":
        if not args.pattern:
            raise _UsageError("--pattern is required for the planted model")
        if args.blocks:
            sizes = tuple(int(s) for s in args.blocks.split(","))
        else:
            sizes = (25, 25, 25, 25)
        regimes = {
            "A": SbmRegime(block_sizes=sizes, p_in=args.p_in, p_out=args.p_out),
            "B": SbmRegime(block_sizes=(sum(sizes),), p_in=args.p_uniform, p_out=args.p_uniform),
        }
        seq, truth = planted_state_sequence(
            regimes, list(args.pattern), tau=args.tau, seed=args.seed
        )
        log = snapshot_sequence_to_event_log(seq)
        with open(out, "w", encoding="utf-8") as fh:
            write_event_log(log, fh)
        truth_path = out.with_suffix(out.suffix + ".labels")
        truth_path.write_text("".join(truth) + "\n", encoding="utf-8")
        print(f"windows={seq.t_max} events={len(log)} -> {out} (labels: {truth_path})")
        return 0

    cfg = _parse_model_spec(args.model, args.n, args.seed)
    g = cfg.sample()
    if args.json:
        out.write_text(graph_to_json(g) + "\n", encoding="utf-8")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            write_edge_list(g, fh)
    print(f"n={g.n} m={g.num_edges} -> {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="netstates", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("states", parents=[], help="full pipeline: events to state sequence")
    _add_input_flags(p)
    _add_measure_flags(p)
    p.add_argument("--c-max", type=int, default=None, help="largest state count considered")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--format", default=None, help="comma subset of csv,json,svg (default: all)")
    p.add_argument("--config", default=None, help="JSON config file; flags override its fields")
    p.set_defaults(func=_cmd_states)

    p = sub.add_parser("distance", help="write the pairwise snapshot distance matrix")
    _add_input_flags(p)
    _add_measure_flags(p)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("compare-models", help="distance discrimination between two graph models")
    p.add_argument("--model-a", required=True, help="e.g. rrg:degree=6 or ba:m0=3,m=3 or lfr:mu=0.1")
    p.add_argument("--model-b", required=True)
    p.add_argument("--n", type=int, default=100, help="node count for both models")
    p.add_argument("--pairs", type=int, default=200, help="graph pairs per comparison")
    _add_measure_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the report as JSON here")
    p.set_defaults(func=_cmd_compare_models)

    p = sub.add_parser("generate", help="emit synthetic graphs or event logs")
    p.add_argument("--model", required=True,
                   help="rrg:degree=6 | ba:m0=3,m=3 | lfr:mu=0.1 | planted | school-day")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true", help="graph output as JSON instead of edge list")
    p.add_argument("--pattern", default=None, help="planted model: regime letters, e.g. ABAB")
    p.add_argument("--blocks", default=None, help="planted model: block sizes, e.g. 25,25,25,25")
    p.add_argument("--p-in", type=float, default=0.375)
    p.add_argument("--p-out", type=float, default=0.012)
    p.add_argument("--p-uniform", type=float, default=0.1)
    p.add_argument("--tau", type=float, default=1.0)
    p.set_defaults(func=_cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
