"""Influential spreader ranking with degree and k-shell (DKS) centrality.

Also ships the baselines it is compared with (degree, k-shell, gravity, local
gravity, DNC, NPIC), a Monte-Carlo SIR simulator for ground-truth spreading
ability, and the rank-quality metrics used to score them.
"""
from .centrality import (
    Method,
    MethodParams,
    NodeScores,
    ParameterError,
    compute_scores,
    dc_scores,
    dks_components,
    dks_scores,
    dnc_scores,
    gravity_scores,
    ks_scores,
    lgm_radius,
    lgm_scores,
    local_clustering,
    npic_scores,
)
from .graph import (
    EmptyGraphError,
    Graph,
    GraphParseError,
    LoadReport,
    NetworkStats,
    bfs_distances_bounded,
    degree,
    load_edge_list,
    network_stats,
    read_edge_list,
)
from .kshell import kshell_decomposition
from .metrics import TauResult, kendall_tau_b, monotonicity
from .sir import SirConfig, SpreadingAbility, simulate_once, spreading_ability

__version__ = "0.1.0"
