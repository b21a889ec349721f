"""
Sym(n) acting on points and on ordered r-tuples of distinct points.

Elements are image tables: g maps point i to g[i]. An r-tuple is encoded as
the mixed-radix index of its Lehmer digits, which is its rank in the
lexicographic order of r-permutations of 0..n-1.
"""
from typing import Iterator, Optional, Sequence, Tuple
import itertools
import math
import numpy as np
from schreierlab.actions.base_action import BaseAction, WORD_LIMIT, index_dtype
from schreierlab.actions.element import Payload
from schreierlab.actions.family_spec import FamilyName, FamilySpec
from schreierlab.errors import InvalidFamilyParams


def _factorial_order(n0: int) -> Optional[int]:
    # 20! is the last factorial below 2^63
    if n0 > 20:
        return None
    order = math.factorial(n0)
    return order if order < WORD_LIMIT else None


class SymmetricAction(BaseAction):
    """Sym(n) in its natural action"""
    family = FamilyName.SYMMETRIC

    def __init__(self, spec: FamilySpec):
        self.points = spec.get("n")
        if self.points < 1:
            raise InvalidFamilyParams(f"{spec}: n must be at least 1")
        self.perm_dtype = index_dtype(self.points)
        super().__init__(spec, self._degree(spec), _factorial_order(self.points), math.lgamma(self.points + 1))

    def _degree(self, spec: FamilySpec) -> int:
        return self.points

    def _act_many(self, payload: Payload, points: np.ndarray) -> np.ndarray:
        return payload[points]

    def _compose(self, first: Payload, second: Payload) -> Payload:
        return second[first]

    def _invert(self, payload: Payload) -> Payload:
        inverse = np.empty_like(payload)
        inverse[payload] = np.arange(payload.size, dtype=payload.dtype)
        return inverse

    def _sample(self, rng) -> Payload:
        return rng.permutation(self.points).astype(self.perm_dtype)

    def _identity(self) -> Payload:
        return np.arange(self.points, dtype=self.perm_dtype)

    def _payloads(self) -> Iterator[Payload]:
        for image in itertools.permutations(range(self.points)):
            yield np.array(image, dtype=self.perm_dtype)

    def _validate(self, payload: Payload) -> Payload:
        table = np.asarray(payload)
        if table.shape != (self.points,):
            raise InvalidFamilyParams(f"permutation of {self.points} points expected, got shape {table.shape}")
        seen = np.zeros(self.points, dtype=bool)
        if table.min(initial=0) < 0 or table.max(initial=0) >= self.points:
            raise InvalidFamilyParams("permutation entries out of range")
        seen[table] = True
        if not seen.all():
            raise InvalidFamilyParams("image table is not a bijection")
        return table.astype(self.perm_dtype)


class TuplesAction(SymmetricAction):
    """Sym(n) acting on ordered r-tuples of distinct points"""
    family = FamilyName.SYMMETRIC_TUPLES

    def __init__(self, spec: FamilySpec):
        self.arity = spec.get("r")
        n0 = spec.get("n")
        if not 1 <= self.arity <= n0:
            raise InvalidFamilyParams(f"{spec}: need 1 <= r <= n")
        # weight of digit i is (n-i-1)(n-i-2)...(n-r+1)
        self._weights = np.array(
            [math.prod(range(n0 - self.arity + 1, n0 - i)) for i in range(self.arity)],
            dtype=np.int64,
        )
        self._table: Optional[np.ndarray] = None
        super().__init__(spec)

    def _degree(self, spec: FamilySpec) -> int:
        return math.perm(self.points, self.arity)

    def encode_tuple(self, values: Sequence[int]) -> int:
        """Index of an r-tuple of distinct points"""
        if len(values) != self.arity or len(set(values)) != self.arity:
            raise InvalidFamilyParams(f"expected {self.arity} distinct points, got {tuple(values)}")
        if any(not 0 <= v < self.points for v in values):
            raise InvalidFamilyParams(f"tuple entries must lie in [0, {self.points})")
        return int(self._encode(np.array([values], dtype=np.int64))[0])

    def decode_index(self, index: int) -> Tuple[int, ...]:
        """The r-tuple with the given index"""
        if not 0 <= index < self.degree:
            raise InvalidFamilyParams(f"index {index} outside [0, {self.degree})")
        return tuple(int(v) for v in self._decode(np.array([index], dtype=np.int64))[0])

    def _encode(self, tuples: np.ndarray) -> np.ndarray:
        digits = tuples.copy()
        for i in range(1, self.arity):
            digits[:, i] -= (tuples[:, :i] < tuples[:, i:i + 1]).sum(axis=1)
        return digits @ self._weights

    def _decode(self, indices: np.ndarray) -> np.ndarray:
        indices = indices.astype(np.int64)
        digits = np.empty((indices.size, self.arity), dtype=np.int64)
        for i in range(self.arity):
            digits[:, i], indices = np.divmod(indices, self._weights[i])
        tuples = digits.copy()
        for i in range(1, self.arity):
            # the d-th unused point: bump past every smaller-or-equal used one, in ascending order
            used = np.sort(tuples[:, :i], axis=1)
            value = digits[:, i].copy()
            for c in range(i):
                value += used[:, c] <= value
            tuples[:, i] = value
        return tuples

    def _tuple_table(self) -> np.ndarray:
        if self._table is None:
            self._table = self._decode(np.arange(self.degree, dtype=np.int64))
        return self._table

    def _act_many(self, payload: Payload, points: np.ndarray) -> np.ndarray:
        if points.size == self.degree:
            tuples = self._tuple_table()[points]
        else:
            tuples = self._decode(points)
        return self._encode(payload[tuples].astype(np.int64))
