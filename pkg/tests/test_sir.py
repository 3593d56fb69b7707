import networkx as nx
import numpy as np
import pytest

from dksrank.graph import Graph
from dksrank.sir import SirConfig, derive_run_seed, simulate_once, spreading_ability

from oracles import sir_expected_outbreak


@pytest.fixture
def karate():
    return Graph.from_edges(nx.karate_club_graph().edges())


class TestConfig:
    @pytest.mark.parametrize(
        "kw", [dict(beta=-0.1), dict(beta=1.1), dict(beta=0.5, recovery_prob=0), dict(beta=0.5, runs=0)]
    )
    def test_validation(self, kw):
        with pytest.raises(ValueError):
            SirConfig(**kw)


class TestSingleRun:
    def test_beta_zero(self, karate):
        assert simulate_once(karate, 0, SirConfig(0.0), 1) == 1

    def test_beta_one_floods_component(self, karate):
        assert simulate_once(karate, 5, SirConfig(1.0), 1) == karate.n

    def test_two_components(self):
        g = Graph.from_edges([(0, 1), (1, 2), (3, 4)])
        assert simulate_once(g, 0, SirConfig(1.0), 3) == 3
        assert simulate_once(g, 4, SirConfig(1.0), 3) == 2

    def test_deterministic_given_seed(self, karate):
        cfg = SirConfig(0.2, recovery_prob=0.5)
        a = [simulate_once(karate, 0, cfg, s) for s in range(20)]
        b = [simulate_once(karate, 0, cfg, s) for s in range(20)]
        assert a == b and len(set(a)) > 1

    def test_slow_recovery_spreads_more(self, karate):
        fast = np.mean([simulate_once(karate, 0, SirConfig(0.1), s) for s in range(300)])
        slow = np.mean([simulate_once(karate, 0, SirConfig(0.1, recovery_prob=0.3), s) for s in range(300)])
        assert slow > fast


class TestAbility:
    def test_endpoints_exact(self, karate):
        n = karate.n
        assert np.all(spreading_ability(karate, SirConfig(0.0, runs=5)).ability == 1 / n)
        assert np.all(spreading_ability(karate, SirConfig(1.0, runs=5)).ability == 1.0)

    def test_bounds(self, karate):
        res = spreading_ability(karate, SirConfig(0.15, runs=30, master_seed=4))
        assert np.all(res.ability >= 1 / karate.n) and np.all(res.ability <= 1)
        assert np.all(res.runs == 30)

    def test_reproducible_and_seed_sensitive(self, karate):
        cfg = SirConfig(0.15, runs=20, master_seed=9)
        a = spreading_ability(karate, cfg).ability
        assert np.array_equal(a, spreading_ability(karate, cfg).ability)
        other = spreading_ability(karate, SirConfig(0.15, runs=20, master_seed=10)).ability
        assert not np.array_equal(a, other)

    def test_parallel_is_bit_identical(self, karate):
        cfg = SirConfig(0.2, runs=10, master_seed=1)
        a = spreading_ability(karate, cfg, n_jobs=1)
        b = spreading_ability(karate, cfg, n_jobs=3)
        assert a.ability.tobytes() == b.ability.tobytes()

    def test_subset_of_nodes(self, karate):
        cfg = SirConfig(0.2, runs=10, master_seed=1)
        full = spreading_ability(karate, cfg).ability
        part = spreading_ability(karate, cfg, nodes=[3, 7]).ability
        assert part[3] == full[3] and part[7] == full[7]
        assert np.isnan(part[0])

    def test_run_seeds_distinct(self):
        seeds = {derive_run_seed(0, v, r) for v in range(20) for r in range(50)}
        assert len(seeds) == 1000
        assert derive_run_seed(-1, 0, 0) == derive_run_seed(2**64 - 1, 0, 0)

    @pytest.mark.parametrize(
        "edges, beta",
        [
            ([(0, 1), (1, 2)], 0.5),
            ([(0, 1), (1, 2), (2, 0)], 0.3),
            ([(0, 1), (1, 2), (2, 3), (3, 0)], 0.4),
            ([(0, 1), (0, 2), (0, 3), (3, 4)], 0.7),
        ],
    )
    def test_matches_exact_enumeration(self, edges, beta):
        n = 1 + max(max(e) for e in edges)
        g = Graph.from_edges(edges, n=n)
        res = spreading_ability(g, SirConfig(beta, runs=10_000, master_seed=42))
        for v in range(n):
            exact = sir_expected_outbreak(n, edges, v, beta) / n
            assert abs(res.ability[v] - exact) <= 3 * res.stderr[v] + 1e-12

    def test_path_expectations(self):
        # centre: 1 + 0.5 + 0.5; end: 1 + 0.5 + 0.25
        assert sir_expected_outbreak(3, [(0, 1), (1, 2)], 1, 0.5) / 3 == pytest.approx(2 / 3)
        assert sir_expected_outbreak(3, [(0, 1), (1, 2)], 0, 0.5) / 3 == pytest.approx(1.75 / 3)

    def test_monotone_in_beta(self):
        g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (1, 3), (3, 4)])
        means = [spreading_ability(g, SirConfig(b, runs=10_000, master_seed=3)).ability.mean()
                 for b in (0.1, 0.3, 0.5, 0.7)]
        assert means == sorted(means)
