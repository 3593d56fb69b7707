"""Command-line entry point: ``dksrank {stats,rank,sir,evaluate,correlate,time}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

from .bench import (
    ALL_METHODS,
    ExperimentConfig,
    check_reference,
    correlate,
    evaluate,
    format_float,
    load_dataset,
    parse_beta_sweep,
    random_attachment_graph,
    resolve_dataset,
    scores_csv,
    time_methods,
)
from .centrality import Method, MethodParams, compute_scores
from .graph import network_stats
from .sir import SirConfig, spreading_ability

_LOG = logging.getLogger("dksrank")


def _methods(text: str) -> tuple[Method, ...]:
    if text.strip().lower() == "all":
        return ALL_METHODS
    return tuple(Method.parse(t) for t in text.split(",") if t.strip())


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.split(",") if t.strip())


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dataset(args):
    entry = resolve_dataset(args.dataset, args.manifest)
    return entry, load_dataset(entry)


def _params(args, entry=None) -> MethodParams:
    radius = args.radius if args.radius is not None else (entry.radius if entry else 3)
    return MethodParams(
        radius=radius,
        lgm_radius=getattr(args, "lgm_radius", None),
        lgm_rounding=getattr(args, "lgm_rounding", "half_up"),
        dnc_alpha=args.dnc_alpha,
        npic_alpha=args.npic_alpha,
        npic_beta=args.npic_beta,
    )


def cmd_stats(args) -> int:
    entry, g = _dataset(args)
    stats = network_stats(g)
    ref = check_reference(entry.name, stats)
    if ref["reference"] is not None and not ref["size_match"]:
        _LOG.warning("%s: n/m %s differ from the reference row", entry.name, ref["discrepancy"])
    if args.format == "json":
        doc = {"dataset": entry.name, **stats.as_dict(), "reference_check": ref}
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        row = stats.as_dict()
        w.writerow(["dataset", *row, "size_match"])
        w.writerow([entry.name, *(format_float(v) if isinstance(v, float) else v for v in row.values()),
                    ref["size_match"]])
        _emit(buf.getvalue(), args.out)
    return 0


def cmd_rank(args) -> int:
    entry, g = _dataset(args)
    params = _params(args, entry)
    results = [compute_scores(g, m, params) for m in _methods(args.methods)]
    _emit(scores_csv(g, results), args.out)
    return 0


def cmd_sir(args) -> int:
    entry, g = _dataset(args)
    buf = io.StringIO()
    buf.write(f"# dataset={entry.name} recovery={args.recovery} seed={args.seed}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["node_label", "beta", "ability", "runs"])
    for beta in _floats(args.beta):
        cfg = SirConfig(beta, args.recovery, args.runs, args.seed)
        res = spreading_ability(g, cfg, n_jobs=args.jobs)
        for lab, a, r in zip(g.labels, res.ability, res.runs):
            w.writerow([lab, format_float(beta), format_float(a), int(r)])
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_evaluate(args) -> int:
    entry, g = _dataset(args)
    if args.beta_sweep:
        betas = tuple(parse_beta_sweep(args.beta_sweep))
    elif args.beta:
        betas = _floats(args.beta)
    else:
        betas = None
    config = ExperimentConfig(
        methods=_methods(args.methods),
        params=_params(args, entry),
        betas=betas,
        runs=args.runs,
        master_seed=args.seed,
        recovery_prob=args.recovery,
    )
    report = evaluate(g, config, dataset=entry.name, n_jobs=args.jobs)
    if args.out:
        for path in report.write(args.out).values():
            _LOG.info("wrote %s", path)
    elif args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.tau_csv())
    return 0


def cmd_correlate(args) -> int:
    entry, g = _dataset(args)
    rows = correlate(g, args.x, args.y, args.beta, args.runs, args.seed,
                     params=_params(args, entry), n_jobs=args.jobs)
    buf = io.StringIO()
    mx, my = Method.parse(args.x).value, Method.parse(args.y).value
    buf.write(f"# dataset={entry.name} beta={args.beta} runs={args.runs} seed={args.seed}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["node_label", f"score_{mx}", f"score_{my}", "sir_ability"])
    for lab, x, y, a in rows:
        w.writerow([lab, format_float(x), format_float(y), format_float(a)])
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_time(args) -> int:
    methods = _methods(args.methods)
    graphs = []
    entry = None
    if args.dataset:
        entry, g = _dataset(args)
        graphs.append((entry.name, g))
    if args.synthetic:
        for scale in (1, 2, 4):
            g = random_attachment_graph(args.synthetic * scale, seed=args.seed)
            graphs.append((f"synthetic_x{scale}", g))
    if not graphs:
        raise ValueError("time needs --dataset and/or --synthetic")
    params = _params(args, entry)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["graph", "n", "m", "method", "seconds"])
    for name, g in graphs:
        for m, t in time_methods(g, methods, params, repeats=args.repeats).items():
            w.writerow([name, g.n, g.m, m.value, f"{t:.6f}"])
    _emit(buf.getvalue(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dksrank", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dataset", help="edge-list path or manifest name")
    common.add_argument("--manifest", default=os.environ.get("DKSRANK_MANIFEST"),
                        help="manifest of 'name path radius' lines")
    common.add_argument("--out", help="output file (directory for evaluate)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    methods = argparse.ArgumentParser(add_help=False)
    methods.add_argument("--methods", default="all", help="comma list of DC,KS,GRAVITY,LGM,DNC,NPIC,DKS or 'all'")
    methods.add_argument("--radius", type=int, help="DKS radius (default: manifest value or 3)")
    methods.add_argument("--lgm-radius", type=int, help="override the derived LGM radius")
    methods.add_argument("--lgm-rounding", choices=("half_up", "floor", "ceil"), default="half_up")
    methods.add_argument("--dnc-alpha", type=float, default=1.0)
    methods.add_argument("--npic-alpha", type=float, default=1.0)
    methods.add_argument("--npic-beta", type=float, default=1.0)

    sim = argparse.ArgumentParser(add_help=False)
    sim.add_argument("--runs", type=int, default=100)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--recovery", type=float, default=1.0)
    sim.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("stats", parents=[common], help="network statistics")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("rank", parents=[common, methods], help="score nodes")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("sir", parents=[common, sim], help="SIR spreading ability")
    p.add_argument("--beta", required=True, help="infection probability (comma list allowed)")
    p.set_defaults(func=cmd_sir)

    p = sub.add_parser("evaluate", parents=[common, methods, sim], help="tau-b and monotonicity sweep")
    p.add_argument("--beta", help="comma list of infection probabilities")
    p.add_argument("--beta-sweep", help="start:stop:step")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("correlate", parents=[common, methods, sim], help="scatter data for two methods")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--beta", type=float, required=True)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("time", parents=[common, methods], help="wall-clock timing")
    p.add_argument("--synthetic", type=int, help="base edge count for synthetic graphs at 1x, 2x, 4x")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_time)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if args.command != "time" and not args.dataset:
        parser.error("--dataset is required")
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"dksrank {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
