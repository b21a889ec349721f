from typing import Iterable, Iterator
import numpy as np


class PointSet:
    """
    Subset of the points 0..n-1 backed by a boolean membership map.

    Instances are immutable: the map is read-only and the cardinality is
    computed once.
    """
    __slots__ = ('_mask', '_size')

    def __init__(self, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        if mask.flags.writeable:
            mask = mask.copy()
            mask.setflags(write=False)
        self._mask = mask
        self._size = int(np.count_nonzero(mask))

    @classmethod
    def of(cls, n: int, points: Iterable[int]) -> "PointSet":
        mask = np.zeros(n, dtype=bool)
        mask[np.fromiter(points, dtype=np.int64)] = True
        return cls(mask)

    @classmethod
    def empty(cls, n: int) -> "PointSet":
        return cls(np.zeros(n, dtype=bool))

    @classmethod
    def full(cls, n: int) -> "PointSet":
        return cls(np.ones(n, dtype=bool))

    @property
    def degree(self) -> int:
        return self._mask.size

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self._mask)

    def is_full(self) -> bool:
        return self._size == self._mask.size

    def union(self, other: "PointSet") -> "PointSet":
        return PointSet(self._mask | other.mask)

    def intersection(self, other: "PointSet") -> "PointSet":
        return PointSet(self._mask & other.mask)

    def issubset(self, other: "PointSet") -> bool:
        return not np.any(self._mask & ~other.mask)

    def __len__(self) -> int:
        return self._size

    def __contains__(self, point: int) -> bool:
        return 0 <= point < self._mask.size and bool(self._mask[point])

    def __iter__(self) -> Iterator[int]:
        return (int(p) for p in self.indices())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self._size == other._size and np.array_equal(self._mask, other.mask)

    def __hash__(self) -> int:
        return hash(np.packbits(self._mask).tobytes())

    def __repr__(self) -> str:
        if self._size <= 10:
            return f"PointSet({self.degree}, {sorted(self)})"
        return f"PointSet({self.degree}, |X|={self._size})"
