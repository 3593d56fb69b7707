"""Ranking quality: Kendall's tau-b and the monotonicity index.

Scores are compared through tie classes. Two scores are tied when they are
within ``REL_TOL`` of each other relative to the larger magnitude, or within
``ABS_TOL`` absolutely. Grouping walks the sorted values, so a class is a run
of consecutive sorted values each tied to its predecessor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "REL_TOL",
    "ABS_TOL",
    "RankGroups",
    "TauResult",
    "tie_ranks",
    "rank_groups",
    "kendall_tau_b",
    "monotonicity",
]

REL_TOL = 1e-9
ABS_TOL = 1e-12


@dataclass(frozen=True)
class RankGroups:
    labels: np.ndarray  # dense tie-class index per element, ordered by score
    sizes: np.ndarray  # N_r per class


@dataclass(frozen=True)
class TauResult:
    tau: float | None
    n_con: int
    n_dis: int
    n_t1: int
    n_t2: int
    n_pairs: int

    @property
    def defined(self) -> bool:
        return self.tau is not None


def tie_ranks(x) -> np.ndarray:
    """Dense integer rank of each value, with near-equal values sharing a rank."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("expected a 1-d score vector")
    if not np.all(np.isfinite(x)):
        raise ValueError("scores must be finite")
    order = np.argsort(x, kind="stable")
    xs = x[order]
    if xs.size == 0:
        return np.zeros(0, dtype=np.int64)
    gap = np.diff(xs)
    scale = np.maximum(np.abs(xs[1:]), np.abs(xs[:-1]))
    new_class = gap > np.maximum(REL_TOL * scale, ABS_TOL)
    ranks_sorted = np.concatenate([[0], np.cumsum(new_class)])
    ranks = np.empty_like(ranks_sorted)
    ranks[order] = ranks_sorted
    return ranks


def rank_groups(x) -> RankGroups:
    ranks = tie_ranks(x)
    return RankGroups(ranks, np.bincount(ranks) if ranks.size else ranks)


def _tied_pairs(ranks: np.ndarray) -> int:
    counts = np.bincount(ranks)
    return int((counts * (counts - 1) // 2).sum())


def _count_inversions(a: list[int]) -> int:
    """Strict inversions (i < j, a[i] > a[j]) via bottom-up merge sort."""
    n = len(a)
    buf = a[:]
    src, dst = a[:], buf
    inv = 0
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if src[j] < src[i]:
                    dst[k] = src[j]
                    inv += mid - i
                    j += 1
                else:
                    dst[k] = src[i]
                    i += 1
                k += 1
            dst[k : k + mid - i] = src[i:mid]
            k += mid - i
            dst[k : k + hi - j] = src[j:hi]
        src, dst = dst, src
        width *= 2
    return inv


def kendall_tau_b(x, y) -> TauResult:
    """Tie-corrected Kendall rank correlation.

    ``tau = (n_con - n_dis) / sqrt((N - n_t1) (N - n_t2))`` with ``N = n(n-1)/2``,
    ``n_t1``/``n_t2`` the pairs tied in ``x``/``y``. Pair counts come from an
    O(n log n) merge-sort inversion count. ``tau`` is ``None`` when either
    vector is entirely tied.
    """
    rx, ry = tie_ranks(x), tie_ranks(y)
    n = rx.size
    if n != ry.size:
        raise ValueError("score vectors differ in length")
    if n < 2:
        raise ValueError("need at least 2 scores")
    n_pairs = n * (n - 1) // 2
    n_t1 = _tied_pairs(rx)
    n_t2 = _tied_pairs(ry)
    n_t12 = _tied_pairs(rx * (int(ry.max()) + 1) + ry)
    # sorted by (x, y), strict inversions in y are exactly the discordant pairs
    order = np.lexsort((ry, rx))
    n_dis = _count_inversions(ry[order].tolist())
    n_con = n_pairs - n_t1 - n_t2 + n_t12 - n_dis
    denom = (n_pairs - n_t1) * (n_pairs - n_t2)
    tau = None if denom == 0 else (n_con - n_dis) / math.sqrt(denom)
    if tau is not None:
        tau = max(-1.0, min(1.0, tau))
    return TauResult(tau, n_con, n_dis, n_t1, n_t2, n_pairs)


def monotonicity(x) -> float:
    """``(1 - sum N_r (N_r - 1) / (N (N - 1)))^2`` over tie classes of sizes ``N_r``."""
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    if n < 2:
        raise ValueError("monotonicity needs at least 2 scores")
    sizes = np.bincount(tie_ranks(x)).astype(np.float64)
    return float((1.0 - (sizes * (sizes - 1)).sum() / (n * (n - 1.0))) ** 2)
