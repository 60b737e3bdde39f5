"""Reverse-reachable sets and their estimator contributions."""

from .contributions import rr_group_contribution, rr_individual_contribution, rr_shapley_values
from .sampler import RRSet, sample_rr_set

__all__ = [
    'rr_group_contribution',
    'rr_individual_contribution',
    'rr_shapley_values',
    'RRSet',
    'sample_rr_set',
]
