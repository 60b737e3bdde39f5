"""Tests for distance functions, Shapley oracles, exact centralities and axioms."""

from fractions import Fraction

import numpy as np
import pytest

from conftest import random_graph, random_ic

from influence_centrality.centrality.axioms import check_anonymity, check_bayesian
from influence_centrality.centrality.exact import (
    exact_group_values,
    exact_influence_centrality,
    graph_centrality,
    is_efficient,
    node_values,
    subset_distances,
)
from influence_centrality.centrality.functions import (
    DistanceFunction,
    FunctionKind,
    NodeWiseFunction,
    parse_function,
)
from influence_centrality.centrality.shapley import (
    monte_carlo_shapley,
    permutation_enumeration_shapley,
    shapley_from_group_values,
)
from influence_centrality.diffusion.enumeration import MixtureInstance, influence_spread
from influence_centrality.diffusion.model import TriggeringModel
from influence_centrality.graph.traversal import bfs_distances, build_layered_graph
from influence_centrality.models.graph import INF, DirectedGraph, LayeredGraphSpec
from influence_centrality.models.report import CentralityMode, ComputationMethod
from influence_centrality.utils.errors import SizeGuardError, ValidationError

ALL_FUNCTIONS = [('deg', None), ('har', None), ('rch', None), ('soi', 2), ('cls', None)]


class TestFunctions:

    def test_node_wise_values(self):
        deg = NodeWiseFunction(FunctionKind.DEG)
        har = NodeWiseFunction(FunctionKind.HAR)
        rch = NodeWiseFunction(FunctionKind.RCH)
        soi = NodeWiseFunction(FunctionKind.SOI, 2)
        assert [deg(d) for d in (0, 1, 2, INF)] == [0.0, 1.0, 0.0, 0.0]
        assert [har(d) for d in (0, 1, 4, INF)] == [0.0, 1.0, 0.25, 0.0]
        assert [rch(d) for d in (0, 5, INF)] == [1.0, 1.0, 0.0]
        assert [soi(d) for d in (0, 2, 3, INF)] == [1.0, 1.0, 0.0, 0.0]

    def test_names(self):
        assert parse_function('soi', 3).name == "soi(3)"
        assert parse_function('HAR').name == "har"
        assert parse_function('cls').name == "cls"

    def test_unknown_function(self):
        with pytest.raises(ValidationError, match="Unknown centrality function"):
            parse_function('pagerank')

    def test_soi_needs_delta(self):
        with pytest.raises(ValidationError):
            parse_function('soi')

    def test_closeness(self):
        cls = DistanceFunction.closeness()
        assert not cls.is_additive
        assert cls((0, 1, 1, 2)) == 0.25
        assert cls((0, 1, INF)) == 0.0
        assert cls((0,)) == 0.0

    def test_soi_one_is_degree_plus_one(self, rng):
        deg, soi = parse_function('deg'), parse_function('soi', 1)
        for _ in range(10):
            g = random_graph(rng, 7, 15)
            for v in g.nodes:
                d = bfs_distances(g, [v])
                assert soi(d) == deg(d) + 1


class TestGraphCentrality:

    def test_layered_individual(self, layered_graph):
        values = {
            name: graph_centrality(layered_graph, parse_function(name)).values[0]
            for name in ('deg', 'har', 'cls', 'rch')
        }
        assert values == {'deg': 3.0, 'har': 5.0, 'cls': 0.0, 'rch': 9.0}

    def test_edgeless_reachability(self):
        report = graph_centrality(DirectedGraph.empty(4), parse_function('rch'))
        assert node_values(report, 4) == [1.0] * 4

    def test_group_mode(self, layered_graph):
        report = graph_centrality(layered_graph, parse_function('rch'), CentralityMode.GROUP, [[0, 1], [7]])
        assert report.values == {(0, 1): 10.0, (7,): 1.0}

    def test_group_mode_needs_groups(self, layered_graph):
        with pytest.raises(ValidationError):
            graph_centrality(layered_graph, parse_function('rch'), CentralityMode.GROUP)

    def test_subset_distances(self, path_graph):
        table = subset_distances(path_graph)
        assert table[0] == (INF, INF, INF)
        assert table[0b101] == (0, 1, 0)

    def test_closed_form_matches_enumeration(self, layered_graph):
        for name, delta in [('deg', None), ('har', None), ('rch', None), ('soi', 2)]:
            f = parse_function(name, delta)
            closed = graph_centrality(layered_graph, f, CentralityMode.SHAPLEY)
            enumerated = graph_centrality(layered_graph, f, CentralityMode.SHAPLEY, exact_max_n=10)
            assert closed.parameters == {'closed_form': True}
            assert node_values(closed, 10) == pytest.approx(node_values(enumerated, 10), abs=1e-9)

    def test_closeness_shapley_falls_back_to_sampling(self, layered_graph):
        report = graph_centrality(layered_graph, parse_function('cls'), CentralityMode.SHAPLEY,
                                  permutation_samples=50, seed=3)
        assert report.method is ComputationMethod.ESTIMATED
        assert set(report.standard_errors) == set(range(10))


class TestShapleyOracles:

    def test_subset_formula_matches_permutations(self, rng):
        n = 4
        values = [0.0] + [float(rng.uniform(0, 5)) for _ in range(1, 1 << n)]
        phi = shapley_from_group_values(n, values)
        brute = permutation_enumeration_shapley(
            range(n), lambda s: values[sum(1 << u for u in s)]
        )
        assert phi == pytest.approx([brute[u] for u in range(n)])

    def test_exact_arithmetic(self):
        values = [0, 1, 1, 3]
        assert shapley_from_group_values(2, values) == [Fraction(3, 2), Fraction(3, 2)]

    def test_wrong_length(self):
        with pytest.raises(ValidationError):
            shapley_from_group_values(2, [0, 1, 2])

    def test_monte_carlo_close_to_exact(self, rng):
        n = 5
        values = [0.0] + [float(rng.uniform(0, 5)) for _ in range(1, 1 << n)]
        exact = shapley_from_group_values(n, values)
        means, stderr = monte_carlo_shapley(
            n, lambda s: values[sum(1 << u for u in s)], 4000, np.random.default_rng(1)
        )
        for m, e, s in zip(means, exact, stderr):
            assert abs(m - e) <= 4 * s + 1e-9

    def test_truncated_limit_one_is_singleton_value(self):
        values = [0, 2, 3, 4]
        assert shapley_from_group_values(2, values, coalition_limit=1) == [2, 3]


class TestInfluenceCentrality:

    def test_single_edge_reachability(self, single_edge_model):
        report = exact_influence_centrality(single_edge_model, parse_function('rch'), exact=True)
        assert report.values == {0: Fraction(3, 2), 1: Fraction(1)}

    def test_null_instance_shapley(self):
        model = TriggeringModel.bfs_instance(DirectedGraph.empty(4))
        report = exact_influence_centrality(model, parse_function('rch'), CentralityMode.SHAPLEY)
        assert node_values(report, 4) == pytest.approx([1.0] * 4)

    def test_large_shapley_falls_back_to_permutations(self):
        model = TriggeringModel.bfs_instance(DirectedGraph.empty(9))
        report = exact_influence_centrality(model, parse_function('rch'), CentralityMode.SHAPLEY,
                                            permutation_samples=50)
        assert report.method is ComputationMethod.ESTIMATED
        assert node_values(report, 9) == pytest.approx([1.0] * 9)
        assert report.standard_errors == {v: 0.0 for v in range(9)}

    def test_permutation_fallback_matches_exact(self, rng):
        model = random_ic(rng, 9, 5)
        f = parse_function('har')
        exact = node_values(exact_influence_centrality(model, f, CentralityMode.SHAPLEY, exact_max_n=9), 9)
        report = exact_influence_centrality(model, f, CentralityMode.SHAPLEY, exact_max_n=8,
                                            permutation_samples=2000, seed=5)
        estimated = node_values(report, 9)
        # Every permutation telescopes to the grand coalition value
        assert sum(estimated) == pytest.approx(sum(exact))
        for v in range(9):
            assert abs(estimated[v] - exact[v]) <= 5 * report.standard_errors[v] + 1e-9

    def test_truncated_shapley_size_guard(self):
        model = TriggeringModel.bfs_instance(DirectedGraph.empty(9))
        with pytest.raises(SizeGuardError):
            exact_influence_centrality(model, parse_function('rch'), CentralityMode.SHAPLEY, coalition_limit=2)

    def test_efficiency(self, rng):
        for name, delta in ALL_FUNCTIONS:
            f = parse_function(name, delta)
            model = random_ic(rng, 5, 7)
            report = exact_influence_centrality(model, f, CentralityMode.SHAPLEY)
            grand = exact_group_values(model, f)[-1]
            ok, gap = is_efficient(report, grand)
            assert ok, gap

    def test_symmetric_nodes_share_values(self):
        g = DirectedGraph.from_edges(3, [(0, 2), (1, 2)])
        model = TriggeringModel.independent_cascade(g, default=0.5)
        phi = node_values(exact_influence_centrality(model, parse_function('har'), CentralityMode.SHAPLEY), 3)
        assert phi[0] == pytest.approx(phi[1])

    def test_null_player(self):
        # Node 3 is isolated and f = deg ignores the seed itself
        g = DirectedGraph.from_edges(4, [(0, 1), (1, 2)])
        model = TriggeringModel.independent_cascade(g, default=0.5)
        phi = node_values(exact_influence_centrality(model, parse_function('deg'), CentralityMode.SHAPLEY), 4)
        assert phi[3] == pytest.approx(0.0, abs=1e-12)

    def test_truncated_reachability_is_monotone(self, rng):
        g = random_graph(rng, 6, 9)
        model = TriggeringModel.bfs_instance(g)
        f = parse_function('rch')
        previous = None
        for c in range(1, 7):
            phi = node_values(
                exact_influence_centrality(model, f, CentralityMode.SHAPLEY, coalition_limit=c), 6
            )
            if previous is not None:
                assert all(p <= q + 1e-12 for p, q in zip(phi, previous))
            previous = phi
        full = node_values(exact_influence_centrality(model, f, CentralityMode.SHAPLEY), 6)
        assert previous == pytest.approx(full)

    def test_group_reachability_is_monotone(self, rng):
        model = random_ic(rng, 5, 8)
        values = exact_group_values(model, parse_function('rch'))
        for small in range(32):
            for large in range(32):
                if small & large == small:
                    assert values[small] <= values[large] + 1e-12

    def test_sni_equivalence(self, rng):
        f = parse_function('rch')
        for _ in range(20):
            n = int(rng.integers(2, 7))
            model = random_ic(rng, n, int(rng.integers(1, 13)))
            report = exact_influence_centrality(model, f)
            for v in range(n):
                assert report.values[v] == pytest.approx(influence_spread(model, [v]), abs=1e-12)

    def test_conformity(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 9))
            g = random_graph(rng, n, int(rng.integers(0, 2 * n + 1)))
            model = TriggeringModel.bfs_instance(g)
            groups = [
                sorted({int(u) for u in rng.integers(0, n, size=int(rng.integers(1, n + 1)))})
                for _ in range(10)
            ]
            for name, delta in ALL_FUNCTIONS:
                f = parse_function(name, delta)
                for mode in CentralityMode:
                    query = groups if mode is CentralityMode.GROUP else None
                    psi = exact_influence_centrality(model, f, mode, query)
                    mu = graph_centrality(g, f, mode, query)
                    assert psi.values == mu.values, (name, mode, g.edges)


class TestAxioms:

    def test_identity_permutation(self, single_edge_model):
        assert check_anonymity(single_edge_model, parse_function('har'), [0, 1])

    def test_swap_single_edge(self, single_edge_model):
        assert check_anonymity(single_edge_model, parse_function('har'), [1, 0])

    def test_layered_instance(self, rng):
        spec = LayeredGraphSpec.of(6, {0}, {1, 2}, {3, 4, 5})
        model = TriggeringModel.bfs_instance(build_layered_graph(spec))
        perm = [int(u) for u in rng.permutation(6)]
        assert check_anonymity(model, parse_function('har'), perm)

    def test_random_anonymity(self, rng):
        for trial in range(20):
            model = random_ic(rng, 5, 7)
            perm = [int(u) for u in rng.permutation(5)]
            mode = CentralityMode.SHAPLEY if trial % 2 else CentralityMode.INDIVIDUAL
            assert check_anonymity(model, parse_function('har'), perm, mode)

    def test_alpha_one(self, single_edge_model):
        other = TriggeringModel.bfs_instance(single_edge_model.graph)
        assert check_bayesian(single_edge_model, other, 1.0, parse_function('rch'))

    def test_layered_vs_null(self):
        spec = LayeredGraphSpec.of(3, {0}, {1}, {2})
        layered = TriggeringModel.bfs_instance(build_layered_graph(spec))
        null = TriggeringModel.bfs_instance(DirectedGraph.empty(3))
        f = parse_function('har')
        assert check_bayesian(layered, null, 0.25, f)
        mixed = exact_influence_centrality(MixtureInstance.of(layered, null, 0.25), f)
        assert mixed.values[0] == pytest.approx(0.25 * 1.5)

    def test_random_bayesian(self, rng):
        for trial in range(20):
            first = random_ic(rng, 4, 5)
            second = random_ic(rng, 4, 5)
            alpha = float(rng.uniform())
            mode = CentralityMode.SHAPLEY if trial % 2 else CentralityMode.INDIVIDUAL
            assert check_bayesian(first, second, alpha, parse_function('rch'), mode)

    def test_bayesian_rejects_mismatched_sizes(self, single_edge_model):
        with pytest.raises(ValidationError):
            check_bayesian(single_edge_model, TriggeringModel.bfs_instance(DirectedGraph.empty(3)),
                           0.5, parse_function('rch'))
