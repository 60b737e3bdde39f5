"""Data models for centrality reports and estimation traces."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

GroupKey = Tuple[int, ...]
ReportKey = Union[int, GroupKey]


class CentralityMode(Enum):
    """Which form of centrality is computed."""
    INDIVIDUAL = "individual"
    GROUP = "group"
    SHAPLEY = "shapley"


class ComputationMethod(Enum):
    """How the values were obtained."""
    EXACT = "exact"
    ESTIMATED = "estimated"


@dataclass
class CentralityReport:
    """
    Centrality values with their provenance.

    values is keyed by node id for individual / Shapley mode and by a
    sorted node tuple for group mode.
    """

    mode: CentralityMode
    function: str
    values: Dict[ReportKey, float]
    method: ComputationMethod = ComputationMethod.EXACT
    parameters: Dict[str, Any] = field(default_factory=dict)
    standard_errors: Optional[Dict[ReportKey, float]] = None
    labels: Optional[Tuple[str, ...]] = None

    # Metadata
    generated_by: str = "influence-centrality"
    version: str = "0.1.0"

    def value(self, key: ReportKey) -> float:
        return self.values[key]

    @property
    def total(self) -> float:
        """Sum of all values (Shapley efficiency total)."""
        return sum(self.values.values())

    def key_label(self, key: ReportKey) -> str:
        """Printable key using original node labels when available."""
        def one(node: int) -> str:
            return self.labels[node] if self.labels else str(node)

        if isinstance(key, tuple):
            return ",".join(one(u) for u in key)
        return one(key)

    def top(self, limit: int = 10) -> List[Tuple[ReportKey, float]]:
        """Highest values first, ties broken by key."""
        return sorted(self.values.items(), key=lambda kv: (-kv[1], str(kv[0])))[:limit]


@dataclass
class PhaseOneIteration:
    """One doubling step of the sample-size search."""

    i: int
    x: float
    theta_i: int
    est_k: float
    stopped: bool


@dataclass
class EstimationTrace:
    """Record of one estimator run."""

    iterations: List[PhaseOneIteration] = field(default_factory=list)
    lower_bound: float = 1.0
    theta: int = 0
    rr_sets_phase1: int = 0
    rr_sets_phase2: int = 0
    mean_rr_size: float = 0.0
    phase1_seconds: float = 0.0
    phase2_seconds: float = 0.0
    warnings: List[str] = field(default_factory=list)

    @property
    def rr_sets_generated(self) -> int:
        return self.rr_sets_phase1 + self.rr_sets_phase2

    def to_dict(self, include_timings: bool = False) -> Dict[str, Any]:
        """Serializable form; wall-clock fields only on request."""
        data: Dict[str, Any] = {
            'iterations': [
                {
                    'i': it.i,
                    'x': it.x,
                    'theta_i': it.theta_i,
                    'est_k': it.est_k,
                    'stopped': it.stopped
                }
                for it in self.iterations
            ],
            'lower_bound': self.lower_bound,
            'theta': self.theta,
            'rr_sets_phase1': self.rr_sets_phase1,
            'rr_sets_phase2': self.rr_sets_phase2,
            'rr_sets_generated': self.rr_sets_generated,
            'mean_rr_size': self.mean_rr_size,
            'warnings': list(self.warnings),
        }
        if include_timings:
            data['phase1_seconds'] = self.phase1_seconds
            data['phase2_seconds'] = self.phase2_seconds
        return data
