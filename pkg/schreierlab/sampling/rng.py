"""
Seeded random streams.

Streams come from numpy's PCG64 bit generator, whose output is fixed by the
seed on every platform. Trial seeds are derived from a master seed with the
splitmix64 finalizer, so trial i of a run never depends on how many workers
ran the other trials.
"""
from typing import Optional, Union
import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(value: int) -> int:
    """splitmix64 finalizer, a bijection on 64-bit integers"""
    z = value & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_trial_seed(master: int, trial_index: int) -> int:
    """Seed of trial `trial_index` under `master`; injective in the index"""
    return mix64((master + GOLDEN_GAMMA * (trial_index + 1)) & MASK64)


class SeededRng:
    """A single-owner random stream with a recorded 64-bit seed"""
    def __init__(self, seed: int):
        self.seed = int(seed) & MASK64
        self._generator = np.random.Generator(np.random.PCG64(self.seed))

    def integers(self, high: int, size: Optional[int] = None) -> Union[int, np.ndarray]:
        """Uniform integers in [0, high)"""
        if size is None:
            return int(self._generator.integers(high))
        return self._generator.integers(high, size=size)

    def permutation(self, n: int) -> np.ndarray:
        """Uniform permutation of 0..n-1 (Fisher-Yates)"""
        return self._generator.permutation(n)

    def random(self) -> float:
        return float(self._generator.random())

    def derive(self, index: int) -> "SeededRng":
        """Independent child stream for trial `index`"""
        return SeededRng(derive_trial_seed(self.seed, index))

    def __repr__(self) -> str:
        return f"SeededRng(seed={self.seed})"
