"""Experiment harness: dataset manifests, evaluation sweeps, scatter data and timing.

Everything here is deterministic given the master seed except wall-clock
timings, which are kept out of :class:`EvaluationReport` serialisations and
written to their own file.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .centrality import Method, MethodParams, NodeScores, compute_scores
from .graph import Graph, NetworkStats, network_stats, read_edge_list
from .metrics import kendall_tau_b, monotonicity
from .sir import SirConfig, spreading_ability

__all__ = [
    "ALL_METHODS",
    "REFERENCE_STATS",
    "REFERENCE_MONOTONICITY",
    "DatasetEntry",
    "ExperimentConfig",
    "EvaluationReport",
    "read_manifest",
    "resolve_dataset",
    "load_dataset",
    "check_reference",
    "default_beta_sweep",
    "parse_beta_sweep",
    "evaluate",
    "correlate",
    "random_attachment_graph",
    "time_methods",
    "scores_csv",
    "format_float",
]

ALL_METHODS: tuple[Method, ...] = tuple(Method)

# Published summary statistics of the four benchmark networks.
REFERENCE_STATS = {
    "dolphins": dict(n=62, m=159, avg_degree=5.1, avg_distance=3.357, assortativity=-0.044, beta_th=0.16, radius=3),
    "netsci": dict(n=379, m=914, avg_degree=4.8, avg_distance=6.042, assortativity=-0.082, beta_th=0.14, radius=3),
    "power": dict(n=4941, m=6594, avg_degree=2.7, avg_distance=18.989, assortativity=0.003, beta_th=0.26, radius=2),
    "router": dict(n=5022, m=6258, avg_degree=2.5, avg_distance=6.449, assortativity=-0.138, beta_th=0.08, radius=3),
}

# Published monotonicity per method on the same networks.
REFERENCE_MONOTONICITY = {
    "dolphins": {"DC": 0.83, "KS": 0.38, "GRAVITY": 1.00, "LGM": 0.98, "DNC": 1.00, "NPIC": 1.00, "DKS": 1.00},
    "netsci": {"DC": 0.76, "KS": 0.64, "GRAVITY": 1.00, "LGM": 1.00, "DNC": 0.99, "NPIC": 1.00, "DKS": 1.00},
    "power": {"DC": 0.59, "KS": 0.25, "GRAVITY": 1.00, "LGM": 1.00, "DNC": 0.81, "NPIC": 1.00, "DKS": 1.00},
    "router": {"DC": 0.29, "KS": 0.07, "GRAVITY": 1.00, "LGM": 1.00, "DNC": 0.07, "NPIC": 1.00, "DKS": 1.00},
}


def _as_method(m: Method | str) -> Method:
    return m if isinstance(m, Method) else Method.parse(m)


def format_float(x: float | None) -> str:
    """Shortest round-trip text for a float; empty for ``None``/nan."""
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return repr(float(x))


# ---------------------------------------------------------------------------
# Datasets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DatasetEntry:
    name: str
    path: Path
    radius: int = 3


def read_manifest(path) -> dict[str, DatasetEntry]:
    """Parse ``name path radius`` lines; relative paths resolve against the manifest."""
    path = Path(path)
    entries = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ValueError(f"{path}:{lineno}: expected 'name path [radius]'")
        radius = int(parts[2]) if len(parts) == 3 else 3
        data_path = Path(parts[1])
        if not data_path.is_absolute():
            data_path = path.parent / data_path
        entries[parts[0]] = DatasetEntry(parts[0], data_path, radius)
    return entries


def resolve_dataset(spec: str, manifest=None) -> DatasetEntry:
    """A manifest name if it is one, otherwise a file path."""
    if manifest is not None and Path(manifest).exists():
        entries = read_manifest(manifest)
        if spec in entries:
            return entries[spec]
    p = Path(spec)
    if not p.exists():
        raise FileNotFoundError(f"dataset {spec!r} is neither a manifest entry nor a file")
    name = p.stem
    radius = REFERENCE_STATS.get(name, {}).get("radius", 3)
    return DatasetEntry(name, p, radius)


def load_dataset(entry: DatasetEntry) -> Graph:
    return read_edge_list(entry.path)[0]


def check_reference(name: str, stats: NetworkStats) -> dict:
    """Compare computed stats with the published row for ``name``.

    ``size_match`` is true only when both n and m agree exactly; the
    tolerance checks are meaningful only in that case.
    """
    ref = REFERENCE_STATS.get(name)
    if ref is None:
        return {"dataset": name, "reference": None, "size_match": False}
    size_match = stats.n == ref["n"] and stats.m == ref["m"]
    out = {
        "dataset": name,
        "reference": ref,
        "size_match": size_match,
        "discrepancy": None if size_match else {"n": (stats.n, ref["n"]), "m": (stats.m, ref["m"])},
    }
    if size_match:
        out["beta_th_ok"] = stats.beta_th is not None and abs(stats.beta_th - ref["beta_th"]) <= 0.01
        out["avg_distance_ok"] = abs(stats.avg_distance - ref["avg_distance"]) <= 0.05
    return out


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def default_beta_sweep(beta_th: float, points: int = 13) -> list[float]:
    """``points`` evenly spaced values from half to twice the threshold, clipped to [0, 1]."""
    return [min(1.0, float(b)) for b in np.linspace(0.5 * beta_th, 2.0 * beta_th, points)]


def parse_beta_sweep(text: str) -> list[float]:
    """``start:stop:step`` (inclusive of ``stop`` up to rounding) to a list."""
    start, stop, step = (float(t) for t in text.split(":"))
    if step <= 0:
        raise ValueError("beta sweep step must be > 0")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(max(count, 0))]


@dataclass(frozen=True)
class ExperimentConfig:
    methods: tuple[Method, ...] = ALL_METHODS
    params: MethodParams = field(default_factory=MethodParams)
    betas: tuple[float, ...] | None = None
    runs: int = 100
    master_seed: int = 0
    recovery_prob: float = 1.0

    def __post_init__(self):
        if not self.methods:
            raise ValueError("select at least one method")
        if self.betas is not None:
            for b in self.betas:
                if not 0.0 <= b <= 1.0:
                    raise ValueError(f"beta {b} outside [0, 1]")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")

    def as_dict(self) -> dict:
        p = self.params
        return {
            "methods": [m.value for m in self.methods],
            "radius": p.radius,
            "gravity_radius": p.gravity_radius,
            "lgm_radius": p.lgm_radius,
            "lgm_rounding": p.lgm_rounding,
            "dnc_alpha": p.dnc_alpha,
            "npic_alpha": p.npic_alpha,
            "npic_beta": p.npic_beta,
            "betas": None if self.betas is None else list(self.betas),
            "runs": self.runs,
            "master_seed": self.master_seed,
            "recovery_prob": self.recovery_prob,
        }


@dataclass(eq=False)
class EvaluationReport:
    dataset: str
    config: ExperimentConfig
    betas: list[float]
    stats: NetworkStats
    labels: tuple[str, ...]
    scores: dict[Method, NodeScores]
    abilities: dict[float, np.ndarray]
    monotonicity: dict[Method, float]
    tau: list[dict]
    timings: dict[Method, float]

    def tau_value(self, method: Method | str, beta: float) -> float | None:
        name = Method(method).value
        for row in self.tau:
            if row["method"] == name and row["beta"] == beta:
                return row["tau"]
        raise KeyError((name, beta))

    def to_json(self) -> str:
        """Deterministic report (timings excluded)."""
        doc = {
            "dataset": self.dataset,
            "config": self.config.as_dict(),
            "betas": self.betas,
            "stats": self.stats.as_dict(),
            "monotonicity": {m.value: v for m, v in self.monotonicity.items()},
            "method_params": {m.value: s.params for m, s in self.scores.items()},
            "tau": self.tau,
        }
        return json.dumps(doc, indent=2) + "\n"

    def tau_csv(self) -> str:
        buf = io.StringIO()
        buf.write(_config_comment(self))
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["method", "beta", "runs", "tau", "n_con", "n_dis", "n_t1", "n_t2", "n_pairs"])
        for r in self.tau:
            w.writerow([r["method"], format_float(r["beta"]), r["runs"], format_float(r["tau"]),
                        r["n_con"], r["n_dis"], r["n_t1"], r["n_t2"], r["n_pairs"]])
        return buf.getvalue()

    def monotonicity_csv(self) -> str:
        buf = io.StringIO()
        buf.write(_config_comment(self))
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["method", "monotonicity"])
        for m, v in self.monotonicity.items():
            w.writerow([m.value, format_float(v)])
        return buf.getvalue()

    def scatter_csv(self) -> str:
        """One row per node: every method score and the SIR ability at every beta."""
        buf = io.StringIO()
        buf.write(_config_comment(self))
        w = csv.writer(buf, lineterminator="\n")
        methods = list(self.scores)
        w.writerow(["node_label"] + [m.value for m in methods]
                   + [f"sir_{format_float(b)}" for b in self.betas])
        for i, lab in enumerate(self.labels):
            w.writerow([lab] + [format_float(self.scores[m].scores[i]) for m in methods]
                       + [format_float(self.abilities[b][i]) for b in self.betas])
        return buf.getvalue()

    def timings_json(self) -> str:
        return json.dumps({m.value: t for m, t in self.timings.items()}, indent=2) + "\n"

    def write(self, out_dir) -> dict[str, Path]:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        files = {
            "report.json": self.to_json(),
            "tau.csv": self.tau_csv(),
            "monotonicity.csv": self.monotonicity_csv(),
            "scatter.csv": self.scatter_csv(),
            "timings.json": self.timings_json(),
        }
        written = {}
        for name, text in files.items():
            path = out_dir / name
            path.write_text(text, encoding="utf-8")
            written[name] = path
        return written


def _config_comment(report: EvaluationReport) -> str:
    return f"# dataset={report.dataset} config={json.dumps(report.config.as_dict(), sort_keys=True)}\n"


def evaluate(g: Graph, config: ExperimentConfig, dataset: str = "", n_jobs: int = 1) -> EvaluationReport:
    """Score every method, run SIR at every beta and compare.

    With ``config.betas`` unset the sweep defaults to
    :func:`default_beta_sweep` around the graph's epidemic threshold.
    ``n_jobs`` only affects the SIR stage and never the results.
    """
    stats = network_stats(g)
    if config.betas is None:
        if stats.beta_th is None:
            raise ValueError("graph has no epidemic threshold; pass explicit betas")
        betas = default_beta_sweep(stats.beta_th)
    else:
        betas = list(config.betas)

    scores: dict[Method, NodeScores] = {}
    timings: dict[Method, float] = {}
    for method in config.methods:
        t0 = time.perf_counter()
        scores[method] = compute_scores(g, method, config.params)
        timings[method] = time.perf_counter() - t0

    abilities = {}
    for beta in betas:
        sir_cfg = SirConfig(beta, config.recovery_prob, config.runs, config.master_seed)
        abilities[beta] = spreading_ability(g, sir_cfg, n_jobs=n_jobs).ability

    tau_rows = []
    for method in config.methods:
        for beta in betas:
            res = kendall_tau_b(scores[method].scores, abilities[beta])
            tau_rows.append({
                "method": method.value,
                "beta": beta,
                "runs": config.runs,
                "tau": res.tau,
                "n_con": res.n_con,
                "n_dis": res.n_dis,
                "n_t1": res.n_t1,
                "n_t2": res.n_t2,
                "n_pairs": res.n_pairs,
            })

    mono = {m: monotonicity(s.scores) for m, s in scores.items()}
    return EvaluationReport(dataset, config, betas, stats, g.labels, scores, abilities, mono, tau_rows, timings)


def correlate(
    g: Graph,
    method_x: Method | str,
    method_y: Method | str,
    beta: float,
    runs: int = 100,
    seed: int = 0,
    params: MethodParams | None = None,
    n_jobs: int = 1,
) -> list[tuple[str, float, float, float]]:
    """Rows ``(node_label, score_x, score_y, sir_ability)`` for scatter plots."""
    mx, my = _as_method(method_x), _as_method(method_y)
    sx = compute_scores(g, mx, params).scores
    sy = sx if mx is my else compute_scores(g, my, params).scores
    ability = spreading_ability(g, SirConfig(beta, runs=runs, master_seed=seed), n_jobs=n_jobs).ability
    return [(lab, float(sx[i]), float(sy[i]), float(ability[i])) for i, lab in enumerate(g.labels)]


def scores_csv(g: Graph, results: Sequence[NodeScores]) -> str:
    """Long-format scores with a parameter header comment."""
    buf = io.StringIO()
    header = {r.method.value: r.params for r in results}
    buf.write(f"# params={json.dumps(header, sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["node_label", "method", "score"])
    for r in results:
        for lab, s in zip(g.labels, r.scores):
            w.writerow([lab, r.method.value, format_float(s)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Timing
# ---------------------------------------------------------------------------


def random_attachment_graph(n_edges: int, per_node: int = 2, seed: int = 0) -> Graph:
    """Grow a graph where each new node links to ``per_node`` uniformly chosen earlier nodes.

    The result has about ``n_edges`` edges and ``n_edges / per_node`` nodes.
    Degrees stay exponentially distributed, so bounded-radius neighbourhoods
    stay small as the graph grows.
    """
    rng = np.random.default_rng(seed)
    n = max(per_node + 1, n_edges // per_node + 1)
    edges = [(i, j) for i in range(per_node + 1) for j in range(i)]
    for v in range(per_node + 1, n):
        for u in rng.choice(v, size=per_node, replace=False):
            edges.append((v, int(u)))
    return Graph.from_edges(edges, n=n)


def time_methods(
    g: Graph,
    methods: Iterable[Method | str],
    params: MethodParams | None = None,
    repeats: int = 3,
) -> dict[Method, float]:
    """Best-of-``repeats`` wall-clock seconds per method."""
    out = {}
    for method in map(_as_method, methods):
        best = math.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            compute_scores(g, method, params)
            best = min(best, time.perf_counter() - t0)
        out[method] = best
    return out
