"""Tests for RR-set sampling and per-RR-set contributions."""

from fractions import Fraction

import numpy as np
import pytest

from conftest import random_ic

from influence_centrality.centrality.exact import exact_influence_centrality, node_values
from influence_centrality.centrality.functions import FunctionKind, NodeWiseFunction, parse_function
from influence_centrality.centrality.shapley import level_shapley, permutation_enumeration_shapley
from influence_centrality.diffusion.model import TriggeringModel
from influence_centrality.diffusion.rng import RngStream
from influence_centrality.models.graph import DirectedGraph
from influence_centrality.models.report import CentralityMode
from influence_centrality.rr.contributions import (
    rr_group_contribution,
    rr_individual_contribution,
    rr_shapley_values,
)
from influence_centrality.rr.sampler import RRSet, sample_rr_set
from influence_centrality.utils.errors import ValidationError

KERNELS = [
    NodeWiseFunction(FunctionKind.DEG),
    NodeWiseFunction(FunctionKind.HAR),
    NodeWiseFunction(FunctionKind.RCH),
    NodeWiseFunction(FunctionKind.SOI, 2),
]


def random_rr_set(rng: np.random.Generator, max_size: int) -> RRSet:
    """Root 0 plus nodes on contiguous levels 1..Δ."""
    size = int(rng.integers(1, max_size + 1))
    dist = {0: 0}
    level = 0
    for u in range(1, size):
        # Stay on the current level or open the next one
        if level == 0 or rng.random() < 0.5:
            level += 1
        dist[u] = level
    return RRSet(root=0, dist=dist)


def brute_force(rr: RRSet, g: NodeWiseFunction):
    def value(coalition):
        levels = [rr.dist[u] for u in coalition]
        return g(min(levels)) if levels else 0.0
    return permutation_enumeration_shapley(sorted(rr.dist), value)


class TestSampler:

    def test_no_live_edges(self, layered_graph):
        model = TriggeringModel.independent_cascade(layered_graph, default=0.0)
        rr = sample_rr_set(model, RngStream(0), root=4)
        assert rr.dist == {4: 0}
        assert rr.depth == 0

    def test_path(self, path_graph):
        rr = sample_rr_set(TriggeringModel.bfs_instance(path_graph), RngStream(0), root=2)
        assert rr.dist == {2: 0, 1: 1, 0: 2}

    def test_layered_root(self, layered_graph):
        rr = sample_rr_set(TriggeringModel.bfs_instance(layered_graph), RngStream(0), root=7)
        assert rr.dist == {7: 0, 5: 1, 6: 1, 2: 2, 3: 2, 4: 2, 0: 3, 1: 3}
        assert rr.level_sizes == [1, 2, 3, 2]
        assert rr.suffix_counts() == [8, 7, 5, 2, 0]

    def test_format(self, path_graph):
        rr = sample_rr_set(TriggeringModel.bfs_instance(path_graph), RngStream(0), root=2)
        assert rr.format() == "2 | 0:2,1:1,2:0"

    def test_root_out_of_range(self, path_graph):
        with pytest.raises(ValidationError):
            sample_rr_set(TriggeringModel.bfs_instance(path_graph), RngStream(0), root=3)

    def test_reproducible(self, rng):
        model = random_ic(rng, 8, 16)
        a, b = RngStream(4), RngStream(4)
        assert [sample_rr_set(model, a).dist for _ in range(20)] == [sample_rr_set(model, b).dist for _ in range(20)]


class TestContributions:

    def test_reachability(self):
        rr = RRSet(root=0, dist={0: 0, 1: 1, 2: 2})
        assert rr_individual_contribution(rr, KERNELS[2]) == {0: 1.0, 1: 1.0, 2: 1.0}

    def test_harmonic(self):
        rr = RRSet(root=0, dist={0: 0, 1: 1, 2: 2})
        assert rr_individual_contribution(rr, KERNELS[1]) == {0: 0.0, 1: 1.0, 2: 0.5}

    def test_degree_on_layered_rr_set(self, layered_graph):
        rr = sample_rr_set(TriggeringModel.bfs_instance(layered_graph), RngStream(0), root=7)
        contributions = rr_individual_contribution(rr, KERNELS[0])
        assert {u for u, c in contributions.items() if c} == {5, 6}

    def test_group(self):
        rr = RRSet(root=0, dist={0: 0, 1: 1, 2: 3})
        har = KERNELS[1]
        assert rr_group_contribution(rr, har, {7, 8}) == 0.0
        assert rr_group_contribution(rr, har, {0, 2}) == 0.0
        assert rr_group_contribution(rr, KERNELS[2], {0}) == 1.0
        assert rr_group_contribution(rr, har, {1, 2}) == 1.0


class TestShapleyClosedForm:

    def test_reachability_is_uniform(self, rng):
        for _ in range(50):
            rr = random_rr_set(rng, 8)
            phi = rr_shapley_values(rr, KERNELS[2], exact=True)
            assert all(v == Fraction(1, len(rr)) for v in phi.values())

    def test_degree(self):
        rr = RRSet(root=0, dist={0: 0, 1: 1, 2: 1, 3: 1, 4: 2})
        phi = rr_shapley_values(rr, KERNELS[0], exact=True)
        assert phi[1] == phi[2] == phi[3] == Fraction(1, 4)
        assert phi[0] == Fraction(-3, 4)
        assert phi[4] == 0

    def test_efficiency(self, rng):
        for _ in range(100):
            rr = random_rr_set(rng, 12)
            for g in KERNELS:
                assert sum(rr_shapley_values(rr, g, exact=True).values()) == Fraction(g(0))

    def test_star_with_three_leaves(self):
        rr = RRSet(root=0, dist={0: 0, 1: 1, 2: 1, 3: 1})
        phi = rr_shapley_values(rr, KERNELS[1])
        brute = brute_force(rr, KERNELS[1])
        assert phi == pytest.approx(brute, abs=1e-12)

    def test_matches_permutation_enumeration(self, rng):
        for _ in range(500):
            rr = random_rr_set(rng, 6)
            for g in KERNELS:
                phi = rr_shapley_values(rr, g)
                brute = brute_force(rr, g)
                for u in rr.dist:
                    assert phi[u] == pytest.approx(brute[u], abs=1e-9)

    @pytest.mark.slow
    def test_matches_permutation_enumeration_large(self, rng):
        for _ in range(20):
            rr = random_rr_set(rng, 8)
            for g in KERNELS:
                phi = rr_shapley_values(rr, g)
                brute = brute_force(rr, g)
                for u in rr.dist:
                    assert phi[u] == pytest.approx(brute[u], abs=1e-9)

    def test_empty_map(self):
        assert level_shapley({}, KERNELS[0]) == {}


@pytest.mark.slow
class TestUnbiasedness:
    """n · E[contribution] over random RR sets equals the exact centrality."""

    SAMPLES = 200_000

    @pytest.mark.parametrize("mode", [CentralityMode.INDIVIDUAL, CentralityMode.SHAPLEY])
    def test_kernel_means(self, mode):
        model = random_ic(np.random.default_rng(8), 6, 10)
        g = NodeWiseFunction(FunctionKind.HAR)
        exact = node_values(exact_influence_centrality(model, parse_function('har'), mode), model.n)

        rng = RngStream(123)
        samples = np.zeros((self.SAMPLES, model.n))
        for row in range(self.SAMPLES):
            rr = sample_rr_set(model, rng)
            contribution = (
                rr_individual_contribution(rr, g) if mode is CentralityMode.INDIVIDUAL
                else rr_shapley_values(rr, g)
            )
            for u, value in contribution.items():
                samples[row, u] = value

        means = model.n * samples.mean(axis=0)
        stderr = model.n * samples.std(axis=0, ddof=1) / np.sqrt(self.SAMPLES)
        for m, e, s in zip(means, exact, stderr):
            assert abs(m - e) <= 4 * s + 1e-9


def test_rr_on_empty_graph():
    model = TriggeringModel.bfs_instance(DirectedGraph.empty(3))
    rr = sample_rr_set(model, RngStream(0))
    assert len(rr) == 1
