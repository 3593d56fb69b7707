"""Slow, obviously-correct reference implementations used only by the tests.

Nothing here imports the package's algorithms; graphs come in as
``(n, edge_list)`` pairs.
"""
from __future__ import annotations

import itertools
import math
from collections import deque

import numpy as np


def adjacency(n, edges):
    adj = {v: set() for v in range(n)}
    for a, b in edges:
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def floyd_warshall(n, edges):
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0)
    for a, b in edges:
        if a != b:
            d[a, b] = d[b, a] = 1
    for k in range(n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return d


def bfs_all(adj, src):
    dist = {src: 0}
    q = deque([src])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def naive_kshell(n, edges):
    """Repeatedly delete one minimum-degree node; its shell is the running max of deletion degrees."""
    adj = adjacency(n, edges)
    alive = set(range(n))
    ks = [0] * n
    level = 0
    while alive:
        v = min(alive, key=lambda u: (len(adj[u] & alive), u))
        level = max(level, len(adj[v] & alive))
        ks[v] = level
        alive.remove(v)
    return ks


def naive_dks(n, edges, radius):
    adj = adjacency(n, edges)
    ks = naive_kshell(n, edges)
    si = [ks[v] + len(adj[v]) for v in range(n)]
    out = []
    for i in range(n):
        dist = bfs_all(adj, i)
        ni = 0.0
        for j, d in dist.items():
            if j != i and d <= radius:
                ni += si[j] / d
        out.append(si[i] * ni)
    return out


def naive_gravity(n, edges, radius):
    d = floyd_warshall(n, edges)
    ks = naive_kshell(n, edges)
    out = []
    for i in range(n):
        s = 0.0
        for j in range(n):
            if j != i and 1 <= d[i, j] <= radius:
                s += ks[i] * ks[j] / d[i, j] ** 2
        out.append(s)
    return out


def naive_npic(n, edges, alpha, beta):
    d = floyd_warshall(n, edges)
    ks = naive_kshell(n, edges)
    k = [len(s) for s in adjacency(n, edges).values()]
    out = []
    for i in range(n):
        si = (ks[i] * k[i] + alpha) / n
        pi = sum((ks[j] * k[j] + beta) / d[i, j] for j in range(n) if j != i and np.isfinite(d[i, j]))
        out.append(si * pi)
    return out


def naive_clustering(n, edges):
    adj = adjacency(n, edges)
    out = []
    for v in range(n):
        k = len(adj[v])
        if k < 2:
            out.append(0.0)
            continue
        links = sum(1 for a, b in itertools.combinations(sorted(adj[v]), 2) if b in adj[a])
        out.append(2.0 * links / (k * (k - 1)))
    return out


def brute_tau_b(x, y):
    """O(n^2) pair enumeration; exact comparisons (callers pass tie-free or integer data)."""
    n = len(x)
    con = dis = t1 = t2 = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = x[i] - x[j]
            dy = y[i] - y[j]
            if dx == 0:
                t1 += 1
            if dy == 0:
                t2 += 1
            if dx * dy > 0:
                con += 1
            elif dx * dy < 0:
                dis += 1
    pairs = n * (n - 1) // 2
    denom = (pairs - t1) * (pairs - t2)
    return (con - dis) / math.sqrt(denom) if denom else None, con, dis, t1, t2


def group_count_monotonicity(x):
    counts = {}
    for v in x:
        counts[v] = counts.get(v, 0) + 1
    n = len(x)
    return (1 - sum(c * (c - 1) for c in counts.values()) / (n * (n - 1))) ** 2


def sir_expected_outbreak(n, edges, seed, beta):
    """Exact mean outbreak size with recovery probability 1.

    Each edge transmits at most once, independently with probability beta,
    so the outbreak is the seed's component in the randomly opened edge set.
    Enumerates all 2^m edge states.
    """
    m = len(edges)
    total = 0.0
    for mask in range(1 << m):
        open_edges = [e for b, e in enumerate(edges) if mask >> b & 1]
        k = len(open_edges)
        p = beta**k * (1 - beta) ** (m - k)
        total += p * len(bfs_all(adjacency(n, open_edges), seed))
    return total


def random_graph(rng, n, p):
    return [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
