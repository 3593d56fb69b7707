"""
Ground truth from SIR simulations
=================================

The spreading ability of a node is the mean fraction of the network that
ends up Removed when an epidemic starts there.
"""

# %%
from dksrank import Graph, SirConfig, spreading_ability

# A three-node path: the centre reaches both ends directly.
path = Graph.from_edges([(0, 1), (1, 2)], labels=["a", "b", "c"])
res = spreading_ability(path, SirConfig(beta=0.5, runs=10_000, master_seed=1))

# %%
# With recovery probability 1 each edge gets exactly one chance to transmit,
# so the exact means are easy to enumerate by hand:
# centre (1 + 0.5 + 0.5) / 3 and end (1 + 0.5 + 0.25) / 3.
for label, mean, se in zip(path.labels, res.ability, res.stderr):
    print(f"{label}: {mean:.4f} +/- {se:.4f}")
print("exact:", 1.75 / 3, 2 / 3)

# %%
# Runs are seeded from (master_seed, node, run index), so a rerun, or a run
# split across processes, gives identical numbers.
again = spreading_ability(path, SirConfig(beta=0.5, runs=10_000, master_seed=1), n_jobs=2)
print("identical:", (again.ability == res.ability).all())
