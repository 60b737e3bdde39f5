"""Data models for influence profiles and their basis decompositions."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from .graph import DistanceVector, LayeredGraphSpec

Scalar = Union[Fraction, float, int]


@dataclass(frozen=True)
class SequenceIndex:
    """
    Bijective index over all monotone, non-stationary set sequences on n nodes.

    Sequences are keyed by their activation-time vectors; stationary
    sequences carry no entry (their mass is implicit).
    """

    n: int
    sequences: Tuple[DistanceVector, ...]
    positions: Dict[DistanceVector, int] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.sequences)

    @property
    def dimension(self) -> int:
        """M."""
        return len(self.sequences)

    def position(self, times: DistanceVector) -> Optional[int]:
        """Index of a sequence, or None for stationary / unknown sequences."""
        return self.positions.get(tuple(times))

    def seed_of(self, pos: int) -> FrozenSet[int]:
        return frozenset(u for u, d in enumerate(self.sequences[pos]) if d == 0)


@dataclass
class ProfileVector:
    """
    Probability of every indexed cascading sequence, for every seed set.

    values[i] is P_I(sequence i); per seed, the residual 1 - Σ is the
    implicit stationary entry.
    """

    index: SequenceIndex
    values: List[Scalar]

    @property
    def n(self) -> int:
        return self.index.n

    @property
    def is_exact(self) -> bool:
        """True when every entry is an exact rational."""
        return all(isinstance(v, (Fraction, int)) for v in self.values)

    def problems(self, tolerance: float = 1e-9) -> List[str]:
        """List invariant violations (entries outside [0,1], seed mass above 1)."""
        issues = []
        masses: Dict[FrozenSet[int], Scalar] = {}
        for pos, value in enumerate(self.values):
            if value < -tolerance or value > 1 + tolerance:
                issues.append(f"Entry {pos} = {value} outside [0,1]")
            seed = self.index.seed_of(pos)
            masses[seed] = masses.get(seed, 0) + value
        for seed, mass in masses.items():
            if mass > 1 + tolerance:
                issues.append(f"Seed {sorted(seed)} has mass {mass} > 1")
        return issues

@dataclass
class BasisDecomposition:
    """Coefficients of a profile over the layered-graph basis."""

    n: int
    coefficients: Dict[LayeredGraphSpec, Scalar]
    residual: float = 0.0
    exact: bool = False

    @property
    def coefficient_sum(self) -> Scalar:
        """Σλ."""
        return sum(self.coefficients.values(), Fraction(0) if self.exact else 0.0)

    def nonzero(self, tolerance: float = 0.0) -> Dict[LayeredGraphSpec, Scalar]:
        return {
            spec: value for spec, value in self.coefficients.items()
            if abs(value) > tolerance
        }
