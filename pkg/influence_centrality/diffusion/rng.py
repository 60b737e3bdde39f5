"""Reproducible random streams built on numpy's counter-based Philox generator."""

from dataclasses import dataclass, field

import numpy as np

from ..utils.errors import ValidationError

_KEY_SPACE = 2 ** 63 - 1


@dataclass
class RngStream:
    """
    Independent random stream identified by (seed, stream).

    The same (seed, stream) pair always yields the same draw sequence;
    distinct stream ids are spawned children of one SeedSequence and are
    statistically independent.
    """

    seed: int
    stream: int = 0
    generator: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.seed < 0 or self.stream < 0:
            raise ValidationError("Seed and stream id must be non-negative")
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        self.generator = np.random.Generator(np.random.Philox(sequence))

    def random(self) -> float:
        """Uniform draw in [0, 1)."""
        return float(self.generator.random())

    def integers(self, low: int, high: int) -> int:
        """Uniform integer in [low, high)."""
        return int(self.generator.integers(low, high))

    def draw_key(self) -> int:
        """Fresh 63-bit key for a keyed (per-node) sub-generator."""
        return int(self.generator.integers(0, _KEY_SPACE))


def keyed_generator(key: int, node: int) -> np.random.Generator:
    """
    Counter-based generator for one (key, node) pair.

    Draws depend only on the pair, not on the order in which nodes are
    visited, which is what couples lazy simulation to full live-edge sampling.
    """
    return np.random.Generator(np.random.Philox(key=(key << 64) | node))
