"""Node ranking methods: DC, KS, Gravity, LGM, DNC, NPIC and DKS.

Every method returns a :class:`NodeScores` whose ``params`` record the
tunables that produced it. Distance-weighted sums skip the node itself and
any unreachable node.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .graph import Graph, _check_node, average_distance, iter_distance_rows
from .kshell import kshell_decomposition

__all__ = [
    "Method",
    "MethodParams",
    "NodeScores",
    "ParameterError",
    "distance_shell_sums",
    "dc_scores",
    "ks_scores",
    "gravity_scores",
    "lgm_radius",
    "lgm_scores",
    "local_clustering",
    "clustering_coefficients",
    "dnc_scores",
    "npic_scores",
    "dks_components",
    "dks_scores",
    "compute_scores",
]


class ParameterError(ValueError):
    """A method parameter is outside its admissible range."""


class Method(str, enum.Enum):
    DC = "DC"
    KS = "KS"
    GRAVITY = "GRAVITY"
    LGM = "LGM"
    DNC = "DNC"
    NPIC = "NPIC"
    DKS = "DKS"

    @classmethod
    def parse(cls, name: str) -> "Method":
        try:
            return cls(name.strip().upper())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ParameterError(f"unknown method {name!r} (choose from {valid})") from None


@dataclass(frozen=True)
class MethodParams:
    radius: int = 3
    gravity_radius: int = 3
    lgm_radius: int | None = None
    lgm_rounding: str = "half_up"
    dnc_alpha: float = 1.0
    npic_alpha: float = 1.0
    npic_beta: float = 1.0

    def __post_init__(self):
        if self.radius < 1 or self.gravity_radius < 1:
            raise ParameterError("radius must be >= 1")
        if self.lgm_radius is not None and self.lgm_radius < 1:
            raise ParameterError("LGM radius must be >= 1")
        if self.lgm_rounding not in _ROUNDING:
            raise ParameterError(f"unknown rounding {self.lgm_rounding!r}")
        _check_dnc_alpha(self.dnc_alpha)
        _check_npic(self.npic_alpha, self.npic_beta)


@dataclass(frozen=True, eq=False)
class NodeScores:
    method: Method
    scores: np.ndarray
    params: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.scores)


def _check_dnc_alpha(alpha: float) -> None:
    if not alpha > 0:
        raise ParameterError(f"DNC alpha must be > 0, got {alpha}")


def _check_npic(alpha: float, beta: float) -> None:
    for name, v in (("alpha", alpha), ("beta", beta)):
        if not 0.1 <= v <= 1.0:
            raise ParameterError(f"NPIC {name} must lie in [0.1, 1], got {v}")


def distance_shell_sums(g: Graph, weights: np.ndarray, radius: int, block: int = 2048) -> np.ndarray:
    """Per-distance sums of node weights.

    Returns ``S`` of shape ``(radius, n)`` where ``S[d - 1, i]`` is the sum of
    ``weights[j]`` over nodes ``j`` at hop distance exactly ``d`` from ``i``.

    Sources are processed ``block`` rows at a time by growing boolean
    reachability rows ``R_d = R_{d-1} (A + I)``, so the cost is proportional
    to the total size of the radius-``d`` neighbourhoods rather than ``n^2``.
    Sums are taken of cumulative reach and differenced; with integer weights
    this is exact.
    """
    if radius < 1:
        raise ParameterError("radius must be >= 1")
    w = np.asarray(weights, dtype=np.float64)
    n = g.n
    out = np.zeros((radius, n))
    if n == 0:
        return out
    step = (g.adjacency_matrix() + sp.identity(n, format="csr")).tocsr()
    for start in range(0, n, block):
        rows = np.arange(start, min(start + block, n))
        reach = sp.csr_matrix(
            (np.ones(len(rows)), rows, np.arange(len(rows) + 1)), shape=(len(rows), n)
        )
        prev_sum = w[rows]
        prev_nnz = reach.nnz
        for d in range(1, radius + 1):
            reach = reach @ step
            reach.data[:] = 1.0
            if reach.nnz == prev_nnz:
                break
            cur_sum = reach @ w
            out[d - 1, rows] = cur_sum - prev_sum
            prev_sum, prev_nnz = cur_sum, reach.nnz
    return out


def dc_scores(g: Graph) -> NodeScores:
    return NodeScores(Method.DC, g.degrees.astype(np.float64), {})


def ks_scores(g: Graph) -> NodeScores:
    return NodeScores(Method.KS, kshell_decomposition(g).astype(np.float64), {})


def _gravity(g: Graph, ks: np.ndarray, radius: int) -> np.ndarray:
    shells = distance_shell_sums(g, ks, radius)
    inv_sq = 1.0 / np.arange(1, radius + 1, dtype=np.float64) ** 2
    return ks * (inv_sq @ shells)


def gravity_scores(g: Graph, radius: int = 3) -> NodeScores:
    """``ks_i * sum(ks_j / d_ij^2)`` over nodes within ``radius`` hops."""
    if radius < 1:
        raise ParameterError("radius must be >= 1")
    ks = kshell_decomposition(g).astype(np.float64)
    return NodeScores(Method.GRAVITY, _gravity(g, ks, radius), {"radius": radius})


_ROUNDING = {
    "half_up": lambda x: math.floor(x + 0.5),
    "floor": math.floor,
    "ceil": math.ceil,
}


def lgm_radius(avg_distance: float, rounding: str = "half_up") -> int:
    """Neighbourhood radius of the local gravity model: half the mean distance, rounded."""
    if rounding not in _ROUNDING:
        raise ParameterError(f"unknown rounding {rounding!r}")
    if not math.isfinite(avg_distance):
        return 1
    return max(1, int(_ROUNDING[rounding](avg_distance / 2.0)))


def lgm_scores(
    g: Graph,
    radius: int | None = None,
    avg_distance: float | None = None,
    rounding: str = "half_up",
) -> NodeScores:
    """Gravity restricted to half the average distance.

    ``radius`` overrides the derived radius. ``avg_distance`` may be passed
    to skip the all-pairs BFS.
    """
    if radius is None:
        if avg_distance is None:
            avg_distance = average_distance(g)
        radius = lgm_radius(avg_distance, rounding)
    elif radius < 1:
        raise ParameterError("radius must be >= 1")
    ks = kshell_decomposition(g).astype(np.float64)
    params = {"radius": radius}
    if avg_distance is not None:
        params["avg_distance"] = avg_distance
    return NodeScores(Method.LGM, _gravity(g, ks, radius), params)


def clustering_coefficients(g: Graph) -> np.ndarray:
    """Local clustering of every node; 0 for nodes of degree < 2."""
    a = g.adjacency_matrix()
    tri = np.asarray((a @ a).multiply(a).sum(axis=1)).ravel() / 2.0
    k = g.degrees.astype(np.float64)
    denom = k * (k - 1)
    out = np.zeros(g.n)
    mask = denom > 0
    out[mask] = 2.0 * tri[mask] / denom[mask]
    return out


def local_clustering(g: Graph, i: int) -> float:
    _check_node(g, i)
    nbrs = g.indices[g.indptr[i] : g.indptr[i + 1]]
    k = len(nbrs)
    if k < 2:
        return 0.0
    nbr_set = set(nbrs.tolist())
    links = sum(
        1
        for u in nbrs.tolist()
        for v in g.indices[g.indptr[u] : g.indptr[u + 1]].tolist()
        if v in nbr_set
    )
    # each triangle edge among neighbours was seen from both ends
    return links / (k * (k - 1))


def dnc_scores(g: Graph, alpha: float = 1.0) -> NodeScores:
    """Degree plus ``alpha`` times the summed clustering of direct neighbours."""
    _check_dnc_alpha(alpha)
    c = clustering_coefficients(g)
    nbr_sum = g.adjacency_matrix() @ c
    return NodeScores(Method.DNC, g.degrees + alpha * nbr_sum, {"alpha": alpha})


def npic_scores(g: Graph, alpha: float = 1.0, beta: float = 1.0) -> NodeScores:
    """Self influence ``(ks k + alpha) / n`` times path influence over all reachable nodes.

    Quadratic: needs the full distance row of every node.
    """
    _check_npic(alpha, beta)
    ks = kshell_decomposition(g).astype(np.float64)
    k = g.degrees.astype(np.float64)
    n = g.n
    si = (ks * k + alpha) / n
    w = ks * k + beta
    pi = np.zeros(n)
    for start, block in iter_distance_rows(g):
        with np.errstate(divide="ignore"):
            inv = 1.0 / block
        inv[~np.isfinite(inv)] = 0.0
        pi[start : start + len(block)] = inv @ w
    return NodeScores(Method.NPIC, si * pi, {"alpha": alpha, "beta": beta})


def dks_components(g: Graph, radius: int) -> tuple[np.ndarray, np.ndarray]:
    """Self influence ``ks + k`` and neighbourhood influence of every node.

    Neighbourhood influence sums ``SI(j) / d_ij`` over nodes within
    ``radius`` hops.
    """
    if radius < 1:
        raise ParameterError("radius must be >= 1")
    si = kshell_decomposition(g) + g.degrees
    shells = distance_shell_sums(g, si, radius)
    ni = (1.0 / np.arange(1, radius + 1, dtype=np.float64)) @ shells
    return si.astype(np.float64), ni


def dks_scores(g: Graph, radius: int = 3) -> NodeScores:
    si, ni = dks_components(g, radius)
    return NodeScores(Method.DKS, si * ni, {"radius": radius})


def compute_scores(
    g: Graph,
    method: Method | str,
    params: MethodParams | None = None,
    avg_distance: float | None = None,
) -> NodeScores:
    """Dispatch to the scoring function for ``method``."""
    method = Method.parse(method) if isinstance(method, str) else method
    p = params or MethodParams()
    if method is Method.DC:
        return dc_scores(g)
    if method is Method.KS:
        return ks_scores(g)
    if method is Method.GRAVITY:
        return gravity_scores(g, p.gravity_radius)
    if method is Method.LGM:
        return lgm_scores(g, p.lgm_radius, avg_distance, p.lgm_rounding)
    if method is Method.DNC:
        return dnc_scores(g, p.dnc_alpha)
    if method is Method.NPIC:
        return npic_scores(g, p.npic_alpha, p.npic_beta)
    return dks_scores(g, p.radius)
