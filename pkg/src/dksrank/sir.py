"""Monte-Carlo SIR spreading ability.

Dynamics are discrete-time and synchronous. In each step every Infected node
makes one independent attempt, with probability ``beta``, on each of its
Susceptible neighbours (as judged at the start of the step), then moves to
Removed with probability ``recovery_prob``. A run ends when nobody is
Infected; its outbreak size is the number of Removed nodes.

Seeding
-------
Run ``r`` seeded at node ``v`` uses the 64-bit seed
``SeedSequence([master_seed, v, r]).generate_state(1, uint64)[0]`` to build a
``numpy.random.Generator(PCG64(seed))``. Seeds depend only on
``(master_seed, v, r)``, so results do not depend on scheduling.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import Graph, _check_node

__all__ = [
    "SirConfig",
    "SpreadingAbility",
    "derive_run_seed",
    "simulate_once",
    "spreading_ability",
]

_MASK64 = (1 << 64) - 1

S, I, R = 0, 1, 2


@dataclass(frozen=True)
class SirConfig:
    beta: float
    recovery_prob: float = 1.0
    runs: int = 100
    master_seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must lie in [0, 1], got {self.beta}")
        if not 0.0 < self.recovery_prob <= 1.0:
            raise ValueError(f"recovery_prob must lie in (0, 1], got {self.recovery_prob}")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")

    def as_dict(self) -> dict:
        return {
            "beta": self.beta,
            "recovery_prob": self.recovery_prob,
            "runs": self.runs,
            "master_seed": self.master_seed,
        }


@dataclass(frozen=True, eq=False)
class SpreadingAbility:
    """Per-node mean final outbreak fraction.

    ``totals[v]`` and ``totals_sq[v]`` are the sum and sum of squares of the
    outbreak sizes (node counts) over the ``runs[v]`` simulations seeded at
    ``v``; ``ability`` is ``totals / (runs * n)``.
    """

    ability: np.ndarray
    runs: np.ndarray
    totals: np.ndarray
    totals_sq: np.ndarray
    n: int
    config: SirConfig

    @property
    def stderr(self) -> np.ndarray:
        """Standard error of each mean, in fraction-of-n units."""
        runs = self.runs.astype(np.float64)
        mean = self.totals / runs
        var = np.maximum(self.totals_sq / runs - mean**2, 0.0)
        with np.errstate(invalid="ignore", divide="ignore"):
            sample_var = np.where(runs > 1, var * runs / (runs - 1), 0.0)
        return np.sqrt(sample_var / runs) / self.n


def derive_run_seed(master_seed: int, node: int, run: int) -> int:
    ss = np.random.SeedSequence([master_seed & _MASK64, node, run])
    return int(ss.generate_state(1, np.uint64)[0])


def _gather_neighbors(indptr: np.ndarray, degs: np.ndarray, frontier: np.ndarray) -> np.ndarray:
    counts = degs[frontier]
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    starts = indptr[frontier]
    ends = np.cumsum(counts)
    offsets = np.repeat(starts - (ends - counts), counts)
    return offsets + np.arange(total)


def _run(
    indptr: np.ndarray,
    indices: np.ndarray,
    degs: np.ndarray,
    seed_node: int,
    beta: float,
    gamma: float,
    rng: np.random.Generator,
) -> int:
    state = np.zeros(len(degs), dtype=np.int8)
    state[seed_node] = I
    infected = np.array([seed_node], dtype=np.int64)
    removed = 0
    while infected.size:
        new = infected[:0]
        if beta > 0.0:
            nbrs = indices[_gather_neighbors(indptr, degs, infected)]
            if nbrs.size:
                hit = rng.random(nbrs.size) < beta
                cand = nbrs[hit]
                new = np.unique(cand[state[cand] == S])
        if gamma >= 1.0:
            recovered, staying = infected, infected[:0]
        else:
            mask = rng.random(infected.size) < gamma
            recovered, staying = infected[mask], infected[~mask]
        state[recovered] = R
        removed += recovered.size
        state[new] = I
        infected = np.concatenate([staying, new])
    return removed


def simulate_once(g: Graph, seed_node: int, config: SirConfig, run_seed: int) -> int:
    """Final outbreak size (node count) of one run started at ``seed_node``."""
    _check_node(g, seed_node)
    rng = np.random.Generator(np.random.PCG64(run_seed & _MASK64))
    return _run(
        g.indptr, g.indices, g.degrees, seed_node, config.beta, config.recovery_prob, rng
    )


def _node_totals(args) -> list[tuple[int, int, int]]:
    indptr, indices, nodes, config = args
    degs = np.diff(indptr)
    out = []
    for v in nodes:
        tot = tot_sq = 0
        for r in range(config.runs):
            rng = np.random.Generator(
                np.random.PCG64(derive_run_seed(config.master_seed, v, r))
            )
            size = _run(indptr, indices, degs, v, config.beta, config.recovery_prob, rng)
            tot += size
            tot_sq += size * size
        out.append((v, tot, tot_sq))
    return out


def spreading_ability(
    g: Graph,
    config: SirConfig,
    nodes=None,
    n_jobs: int = 1,
) -> SpreadingAbility:
    """Mean outbreak fraction of every node (or of ``nodes``) over ``config.runs`` runs.

    ``n_jobs > 1`` farms node chunks out to worker processes; the result is
    bit-identical to the serial one. Nodes not in ``nodes`` get ``nan``.
    """
    n = g.n
    todo = list(range(n)) if nodes is None else [int(v) for v in nodes]
    for v in todo:
        _check_node(g, v)
    totals = np.zeros(n, dtype=np.int64)
    totals_sq = np.zeros(n, dtype=np.int64)
    runs = np.zeros(n, dtype=np.int64)

    if n_jobs > 1 and len(todo) > 1:
        chunks = [todo[i::n_jobs] for i in range(n_jobs)]
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            parts = list(
                pool.map(_node_totals, [(g.indptr, g.indices, c, config) for c in chunks if c])
            )
        results = [row for part in parts for row in part]
    else:
        results = _node_totals((g.indptr, g.indices, todo, config))

    for v, tot, tot_sq in results:
        totals[v] = tot
        totals_sq[v] = tot_sq
        runs[v] = config.runs
    with np.errstate(invalid="ignore", divide="ignore"):
        ability = np.where(runs > 0, totals / (runs * n), np.nan)
    return SpreadingAbility(ability, runs, totals, totals_sq, n, config)
