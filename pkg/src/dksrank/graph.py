"""Undirected simple graphs, edge-list loading, distances and summary statistics."""
from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence, TextIO

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

__all__ = [
    "Graph",
    "LoadReport",
    "NetworkStats",
    "GraphParseError",
    "EmptyGraphError",
    "load_edge_list",
    "read_edge_list",
    "degree",
    "bfs_distances_bounded",
    "iter_distance_rows",
    "average_distance",
    "degree_assortativity",
    "epidemic_threshold",
    "network_stats",
]

_LOG = logging.getLogger(__name__)

DEFAULT_COMMENT_PREFIXES = ("#", "%")

# Rows of the all-pairs distance matrix materialised at once.
_BLOCK_ROWS = 512


class GraphParseError(ValueError):
    """Raised for a malformed edge-list line."""

    def __init__(self, lineno: int, line: str, reason: str = "expected 2 labels"):
        super().__init__(f"line {lineno}: {reason}, got {line.strip()!r}")
        self.lineno = lineno


class EmptyGraphError(ValueError):
    """Raised when an edge list yields no nodes."""


@dataclass(frozen=True)
class LoadReport:
    lines_read: int = 0
    comment_lines: int = 0
    self_loops_dropped: int = 0
    duplicates_collapsed: int = 0

    @property
    def dropped(self) -> int:
        return self.self_loops_dropped + self.duplicates_collapsed


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph in CSR form.

    Node ids are dense integers ``0..n-1``. ``labels[i]`` is the original
    label of node ``i``. Neighbours of ``i`` are
    ``indices[indptr[i]:indptr[i + 1]]``, sorted ascending.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[str, ...]
    _label_index: dict[str, int] = field(repr=False, compare=False)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]],
        n: int | None = None,
        labels: Sequence[Hashable] | None = None,
    ) -> "Graph":
        """Build a graph from integer edge pairs.

        Self-loops are dropped and duplicate or reversed edges collapse to one.
        ``n`` defaults to one past the largest id; ``labels`` defaults to the
        ids rendered as strings.
        """
        arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if n is None:
            n = int(arr.max()) + 1 if arr.size else 0
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise ValueError(f"got {len(labels)} labels for {n} nodes")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("edge endpoint out of range")
        arr = arr[arr[:, 0] != arr[:, 1]]
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        pairs = np.unique(lo * max(n, 1) + hi)
        lo, hi = np.divmod(pairs, max(n, 1))
        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        labels = tuple(str(x) for x in labels)
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != n:
            raise ValueError("node labels must be unique")
        return cls(indptr, cols.astype(np.int64), labels, index)

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, i: int) -> np.ndarray:
        _check_node(self, i)
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def node_id(self, label: str) -> int:
        return self._label_index[label]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(i, j)`` with ``i < j``."""
        for i in range(self.n):
            for j in self.indices[self.indptr[i] : self.indptr[i + 1]]:
                if i < j:
                    yield i, int(j)

    def adjacency_matrix(self) -> sp.csr_matrix:
        data = np.ones(len(self.indices), dtype=np.float64)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the isomorphic graph in which node ``i`` becomes ``perm[i]``."""
        perm = np.asarray(perm, dtype=np.int64)
        edges = [(int(perm[i]), int(perm[j])) for i, j in self.edges()]
        labels = [""] * self.n
        for i, p in enumerate(perm):
            labels[p] = self.labels[i]
        return Graph.from_edges(edges, n=self.n, labels=labels)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _check_node(g: Graph, i: int) -> None:
    if not 0 <= i < g.n:
        raise IndexError(f"node id {i} out of range for graph with {g.n} nodes")


def load_edge_list(
    source: TextIO | Iterable[str],
    comment_prefixes: Sequence[str] = DEFAULT_COMMENT_PREFIXES,
    collapse_duplicates: bool = True,
) -> tuple[Graph, LoadReport]:
    """Parse a whitespace-separated edge list.

    Labels are mapped to dense ids in order of first appearance. Blank lines
    and lines starting with any of ``comment_prefixes`` are skipped. Edges are
    undirected: ``a b`` and ``b a`` are the same edge. A MatrixMarket
    coordinate file is accepted too: when the first line is the
    ``%%MatrixMarket`` banner, the size line that follows the comments is
    skipped and only the first two columns of each entry are read.

    Returns
    -------
    graph, report
        The report counts dropped self-loops and collapsed duplicates.

    Raises
    ------
    GraphParseError
        A data line does not hold exactly two labels.
    EmptyGraphError
        No node was found.
    """
    index: dict[str, int] = {}
    labels: list[str] = []
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    lines = comments = loops = dups = 0
    prefixes = tuple(comment_prefixes)
    matrix_market = size_line_pending = False

    def node(label: str) -> int:
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    for lineno, line in enumerate(source, start=1):
        lines += 1
        stripped = line.strip()
        if lineno == 1 and stripped.startswith("%%MatrixMarket"):
            matrix_market = size_line_pending = True
            comments += 1
            continue
        if not stripped:
            continue
        if (prefixes and stripped.startswith(prefixes)) or (matrix_market and stripped.startswith("%")):
            comments += 1
            continue
        tokens = stripped.split()
        if size_line_pending:
            size_line_pending = False
            continue
        if matrix_market:
            tokens = tokens[:2]
        if len(tokens) != 2:
            raise GraphParseError(lineno, line)
        a, b = node(tokens[0]), node(tokens[1])
        if a == b:
            loops += 1
            continue
        key = (a, b) if a < b else (b, a)
        if key in seen:
            dups += 1
            if collapse_duplicates:
                continue
            raise GraphParseError(lineno, line, "duplicate edge")
        seen.add(key)
        edges.append(key)

    if not labels:
        raise EmptyGraphError("edge list contains no nodes")
    report = LoadReport(lines, comments, loops, dups)
    if report.dropped:
        _LOG.info(
            "dropped %d self-loop(s), collapsed %d duplicate edge(s)",
            loops,
            dups,
        )
    return Graph.from_edges(edges, n=len(labels), labels=labels), report


def read_edge_list(path, **kwargs) -> tuple[Graph, LoadReport]:
    """:func:`load_edge_list` on a UTF-8 file path."""
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh, **kwargs)


def degree(g: Graph, i: int) -> int:
    _check_node(g, i)
    return int(g.indptr[i + 1] - g.indptr[i])


def bfs_distances_bounded(g: Graph, src: int, radius: int | None = None) -> dict[int, int]:
    """Hop distances from ``src`` to every node within ``radius``.

    ``radius=None`` means unbounded. The source itself and unreachable nodes
    are absent from the result.
    """
    _check_node(g, src)
    if radius is not None and radius < 1:
        raise ValueError("radius must be >= 1")
    indptr, indices = g.indptr, g.indices
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if radius is not None and du >= radius:
            continue
        for v in indices[indptr[u] : indptr[u + 1]].tolist():
            if v not in dist:
                dist[v] = du + 1
                queue.append(v)
    del dist[src]
    return dist


def iter_distance_rows(g: Graph, block: int = _BLOCK_ROWS) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(start, D)`` blocks of the all-pairs hop-distance matrix.

    ``D[k, j]`` is the distance from node ``start + k`` to ``j``; unreachable
    entries are ``inf``. Memory is bounded by ``block * n`` floats.
    """
    adj = g.adjacency_matrix()
    for start in range(0, g.n, block):
        stop = min(start + block, g.n)
        yield start, csgraph.shortest_path(
            adj, method="D", directed=False, unweighted=True, indices=np.arange(start, stop)
        )


@dataclass(frozen=True)
class NetworkStats:
    n: int
    m: int
    avg_degree: float
    second_order_avg_degree: float
    avg_distance: float
    assortativity: float
    beta_th: float | None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "avg_degree": self.avg_degree,
            "second_order_avg_degree": self.second_order_avg_degree,
            "avg_distance": self.avg_distance,
            "assortativity": self.assortativity,
            "beta_th": self.beta_th,
        }


def average_distance(g: Graph) -> float:
    """Mean hop distance over ordered pairs of distinct, mutually reachable nodes."""
    total = 0.0
    pairs = 0
    for _, block in iter_distance_rows(g):
        finite = np.isfinite(block) & (block > 0)
        total += float(block[finite].sum())
        pairs += int(finite.sum())
    return total / pairs if pairs else math.nan


def degree_assortativity(g: Graph) -> float:
    """Pearson correlation of endpoint degrees over both orientations of every edge."""
    k = g.degrees.astype(np.float64)
    src = np.repeat(np.arange(g.n), g.degrees)
    x, y = k[src], k[g.indices]
    if x.size == 0:
        return math.nan
    sx, sy = x.std(), y.std()
    if sx == 0 or sy == 0:
        return math.nan
    return float(((x - x.mean()) * (y - y.mean())).mean() / (sx * sy))


def epidemic_threshold(avg_k: float, avg_k2: float) -> float | None:
    """``<k> / (<k^2> - <k>)``, or ``None`` when the denominator is not positive."""
    denom = avg_k2 - avg_k
    if denom <= 0:
        return None
    return avg_k / denom


def network_stats(g: Graph) -> NetworkStats:
    if g.n < 2 or g.m == 0:
        raise ValueError("network_stats needs at least 2 nodes and 1 edge")
    k = g.degrees.astype(np.float64)
    avg_k = 2.0 * g.m / g.n
    avg_k2 = float((k * k).sum() / g.n)
    return NetworkStats(
        n=g.n,
        m=g.m,
        avg_degree=avg_k,
        second_order_avg_degree=avg_k2,
        avg_distance=average_distance(g),
        assortativity=degree_assortativity(g),
        beta_th=epidemic_threshold(avg_k, avg_k2),
    )
