"""Triggering models, random streams, cascades and outcome enumeration."""

from .cascade import (
    bfs_instance_sequence,
    estimate_spread,
    sample_live_edge_graph,
    sample_triggering_set,
    simulate_cascade,
    validate_sequence,
)
from .enumeration import MixtureInstance, enumerate_outcomes, influence_spread, total_probability
from .model import ModelKind, ModelValidationError, TriggeringModel, TriggeringWorld
from .rng import RngStream, keyed_generator

__all__ = [
    'bfs_instance_sequence',
    'estimate_spread',
    'sample_live_edge_graph',
    'sample_triggering_set',
    'simulate_cascade',
    'validate_sequence',
    'MixtureInstance',
    'enumerate_outcomes',
    'influence_spread',
    'total_probability',
    'ModelKind',
    'ModelValidationError',
    'TriggeringModel',
    'TriggeringWorld',
    'RngStream',
    'keyed_generator',
]
