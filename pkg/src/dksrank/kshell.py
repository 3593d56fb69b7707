"""K-shell index by bucketed peeling."""
from __future__ import annotations

import numpy as np

from .graph import Graph

__all__ = ["kshell_decomposition"]


def kshell_decomposition(g: Graph) -> np.ndarray:
    """Shell index of every node.

    Nodes are peeled in order of current degree using degree buckets
    (Batagelj-Zaversnik). A node removed while the shell level is ``s``
    receives ``ks = s``; removals that drop a neighbour to degree ``<= s``
    cascade within the same shell. Isolated nodes get 0.

    Runs in O(n + m).
    """
    n = g.n
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    deg = np.diff(g.indptr).tolist()
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    max_deg = max(deg)

    # bin_start[d]: first position in `order` holding a node of degree d
    counts = [0] * (max_deg + 1)
    for d in deg:
        counts[d] += 1
    bin_start = [0] * (max_deg + 1)
    acc = 0
    for d in range(max_deg + 1):
        bin_start[d] = acc
        acc += counts[d]
    pos = [0] * n
    order = [0] * n
    fill = bin_start[:]
    for v in range(n):
        pos[v] = fill[deg[v]]
        order[pos[v]] = v
        fill[deg[v]] += 1

    for i in range(n):
        v = order[i]
        dv = deg[v]
        for u in indices[indptr[v] : indptr[v + 1]]:
            du = deg[u]
            if du > dv:
                # swap u with the first node of its bucket, then shrink the bucket
                pu = pos[u]
                pw = bin_start[du]
                w = order[pw]
                if u != w:
                    order[pu], order[pw] = w, u
                    pos[u], pos[w] = pw, pu
                bin_start[du] += 1
                deg[u] = du - 1
    return np.asarray(deg, dtype=np.int64)
