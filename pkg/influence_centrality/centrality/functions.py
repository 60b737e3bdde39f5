"""Distance functions: node-wise g and vector-level f."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..models.graph import INF, Distance, DistanceVector
from ..utils.errors import ValidationError


class FunctionKind(Enum):
    """Built-in centrality functions."""
    DEG = "deg"
    HAR = "har"
    RCH = "rch"
    SOI = "soi"
    CLS = "cls"


@dataclass(frozen=True)
class NodeWiseFunction:
    """
    g: extended-natural distance -> real, with g(INF) = 0.

    deg counts distance-1 nodes, har is 1/d (0 at d = 0), rch counts
    reachable nodes and soi(δ) counts nodes within δ including the source.
    """

    kind: FunctionKind
    delta: Optional[int] = None

    def __post_init__(self):
        if self.kind is FunctionKind.CLS:
            raise ValidationError("Closeness is not node-wise additive")
        if self.kind is FunctionKind.SOI and (self.delta is None or self.delta < 1):
            raise ValidationError("soi needs a positive integer δ")

    def __call__(self, d: Distance) -> float:
        if d is INF:
            return 0.0
        if self.kind is FunctionKind.DEG:
            return 1.0 if d == 1 else 0.0
        if self.kind is FunctionKind.HAR:
            return 1.0 / d if d > 0 else 0.0
        if self.kind is FunctionKind.RCH:
            return 1.0
        return 1.0 if d <= self.delta else 0.0

    @property
    def name(self) -> str:
        if self.kind is FunctionKind.SOI:
            return f"soi({self.delta})"
        return self.kind.value


@dataclass(frozen=True)
class DistanceFunction:
    """
    f over distance vectors: additive Σ_u g(d_u), or closeness.

    Closeness is 1 / Σ_u d_u, and 0 when some node is unreachable or the
    sum is 0.
    """

    kind: FunctionKind
    g: Optional[NodeWiseFunction] = None

    @classmethod
    def additive(cls, g: NodeWiseFunction) -> "DistanceFunction":
        return cls(kind=g.kind, g=g)

    @classmethod
    def closeness(cls) -> "DistanceFunction":
        return cls(kind=FunctionKind.CLS)

    @property
    def is_additive(self) -> bool:
        return self.g is not None

    @property
    def name(self) -> str:
        return self.g.name if self.g else self.kind.value

    def __call__(self, d: DistanceVector) -> float:
        if self.g is not None:
            g = self.g
            return sum(g(x) for x in d)
        if any(x is INF for x in d):
            return 0.0
        total = sum(d)
        return 1.0 / total if total > 0 else 0.0


def parse_function(name: str, delta: Optional[int] = None) -> DistanceFunction:
    """
    Resolve a CLI function name.

    Args:
        name: One of deg, har, rch, soi, cls
        delta: Radius for soi

    Raises:
        ValidationError: Unknown name or δ missing for soi
    """
    try:
        kind = FunctionKind(name.lower())
    except ValueError:
        raise ValidationError(
            f"Unknown centrality function '{name}' (expected one of "
            f"{', '.join(k.value for k in FunctionKind)})"
        )
    if kind is FunctionKind.CLS:
        return DistanceFunction.closeness()
    if kind is FunctionKind.SOI and delta is None:
        raise ValidationError("Function soi needs --delta")
    return DistanceFunction.additive(NodeWiseFunction(kind, delta if kind is FunctionKind.SOI else None))
