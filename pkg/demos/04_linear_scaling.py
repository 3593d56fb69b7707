"""
How the cost grows with the graph
=================================

DKS only looks a few hops out from each node, so doubling the edges roughly
doubles the time. NPIC needs every pairwise distance and grows quadratically.
"""

# %%
from dksrank.bench import random_attachment_graph, time_methods

for m in (5_000, 10_000, 20_000):
    g = random_attachment_graph(m, seed=1)
    t = time_methods(g, ["DKS", "NPIC"], repeats=3)
    print(f"n={g.n:6d} m={g.m:6d}  DKS {t['DKS']:.4f}s  NPIC {t['NPIC']:.3f}s")
