"""RR-set centrality estimation."""

from .ice_rr import (
    DEFAULT_MAX_RR_SETS,
    MAX_RR_SETS_ENV,
    EstimatorConfig,
    IceRREstimator,
    estimate,
    final_theta,
    kth_largest,
    phase_one_rounds,
    satisfies_error_bounds,
    stream_id,
    theta_schedule,
)

__all__ = [
    'DEFAULT_MAX_RR_SETS',
    'MAX_RR_SETS_ENV',
    'EstimatorConfig',
    'IceRREstimator',
    'estimate',
    'final_theta',
    'kth_largest',
    'phase_one_rounds',
    'satisfies_error_bounds',
    'stream_id',
    'theta_schedule',
]
