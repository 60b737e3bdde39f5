"""Influence profiles and the layered-graph basis."""

from .basis import (
    BasisCheck,
    LayeredBasis,
    alternating_seed_sum,
    basis_rank_check,
    decompose,
    layered_basis,
    reconstruct_centrality,
    spec_sequence,
)
from .linalg import rational_rank, solve_float, solve_rational
from .sequences import (
    enumerate_layered_instances,
    enumerate_sequences,
    exact_profile,
    graph_profile,
    layered_instance_vector,
    nonempty_subsets,
)

__all__ = [
    'BasisCheck',
    'LayeredBasis',
    'alternating_seed_sum',
    'basis_rank_check',
    'decompose',
    'layered_basis',
    'reconstruct_centrality',
    'spec_sequence',
    'rational_rank',
    'solve_float',
    'solve_rational',
    'enumerate_layered_instances',
    'enumerate_sequences',
    'exact_profile',
    'graph_profile',
    'layered_instance_vector',
    'nonempty_subsets',
]
