"""Distance functions, Shapley oracles and exact centralities."""

from .axioms import check_anonymity, check_bayesian
from .exact import (
    exact_group_values,
    exact_influence_centrality,
    graph_centrality,
    is_efficient,
    node_values,
    subset_distances,
)
from .functions import DistanceFunction, FunctionKind, NodeWiseFunction, parse_function
from .shapley import (
    level_shapley,
    monte_carlo_shapley,
    permutation_enumeration_shapley,
    shapley_from_group_values,
)

__all__ = [
    'check_anonymity',
    'check_bayesian',
    'exact_group_values',
    'exact_influence_centrality',
    'graph_centrality',
    'is_efficient',
    'node_values',
    'subset_distances',
    'DistanceFunction',
    'FunctionKind',
    'NodeWiseFunction',
    'parse_function',
    'level_shapley',
    'monte_carlo_shapley',
    'permutation_enumeration_shapley',
    'shapley_from_group_values',
]
