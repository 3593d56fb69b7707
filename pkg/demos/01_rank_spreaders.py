"""
Ranking spreaders on a small social network
===========================================

Score every member of Zachary's karate club with the seven ranking methods
and look at who comes out on top.
"""

# %%
# Build a Graph from any iterable of integer pairs. Reading an edge-list file
# works the same way through ``dksrank.read_edge_list(path)``.
import networkx as nx
import numpy as np

from dksrank import Graph, Method, MethodParams, compute_scores, dks_components, monotonicity

g = Graph.from_edges(nx.karate_club_graph().edges())
print(g)

# %%
# DKS multiplies a node's own weight (k-shell + degree) by the distance-
# discounted weight of everything within ``radius`` hops.
si, ni = dks_components(g, radius=3)
print("self influence of node 0:", si[0])
print("neighbourhood influence of node 0:", round(ni[0], 2))

# %%
# Every method returns a NodeScores; ``params`` says what produced it.
params = MethodParams(radius=3)
results = {m: compute_scores(g, m, params) for m in Method}
for m, res in results.items():
    top = np.argsort(-res.scores, kind="stable")[:5]
    print(f"{m.value:8s} top-5 {top.tolist()}  params={res.params}")

# %%
# Resolution: how many nodes does each method manage to tell apart?
# 1.0 means no ties at all.
for m, res in results.items():
    print(f"{m.value:8s} monotonicity {monotonicity(res.scores):.3f}")
