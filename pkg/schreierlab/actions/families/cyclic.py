"""
Regular actions of Z_m and (Z_m)^d on themselves (Cayley graphs).

A point of (Z_m)^d is the base-m integer whose j-th digit (least significant
first) is coordinate j; translation adds coordinatewise without carry.
"""
from typing import Iterator, Tuple
import itertools
import math
import numpy as np
from schreierlab.actions.base_action import BaseAction
from schreierlab.actions.element import Payload
from schreierlab.actions.family_spec import FamilyName, FamilySpec
from schreierlab.errors import InvalidFamilyParams


class CyclicAction(BaseAction):
    """Z_m acting on itself by translation"""
    family = FamilyName.CYCLIC
    is_regular = True

    def __init__(self, spec: FamilySpec):
        self.modulus = spec.get("m")
        if self.modulus < 1:
            raise InvalidFamilyParams(f"{spec}: m must be at least 1")
        super().__init__(spec, self.modulus, self.modulus, math.log(self.modulus))

    def _act_many(self, payload: Payload, points: np.ndarray) -> np.ndarray:
        return (points.astype(np.int64) + payload) % self.modulus

    def _compose(self, first: Payload, second: Payload) -> Payload:
        return (first + second) % self.modulus

    def _invert(self, payload: Payload) -> Payload:
        return (-payload) % self.modulus

    def _sample(self, rng) -> Payload:
        return rng.integers(self.modulus)

    def _identity(self) -> Payload:
        return 0

    def _payloads(self) -> Iterator[Payload]:
        return iter(range(self.modulus))

    def _validate(self, payload: Payload) -> Payload:
        return int(payload) % self.modulus


class AbelianPowerAction(BaseAction):
    """(Z_m)^d acting on itself by translation"""
    family = FamilyName.ABELIAN
    is_regular = True

    def __init__(self, spec: FamilySpec):
        self.modulus = spec.get("m")
        self.rank = spec.get("d")
        if self.modulus < 1 or self.rank < 1:
            raise InvalidFamilyParams(f"{spec}: need m >= 1 and d >= 1")
        degree = self.modulus ** self.rank
        self._place = np.array([self.modulus ** j for j in range(self.rank)], dtype=np.int64)
        super().__init__(spec, degree, degree, self.rank * math.log(self.modulus))

    def _act_many(self, payload: Payload, points: np.ndarray) -> np.ndarray:
        points = points.astype(np.int64)
        images = np.zeros_like(points)
        for place, shift in zip(self._place, payload):
            digit = (points // place) % self.modulus
            images += ((digit + shift) % self.modulus) * place
        return images

    def _compose(self, first: Payload, second: Payload) -> Payload:
        return tuple((a + b) % self.modulus for a, b in zip(first, second))

    def _invert(self, payload: Payload) -> Payload:
        return tuple((-a) % self.modulus for a in payload)

    def _sample(self, rng) -> Payload:
        return tuple(int(v) for v in rng.integers(self.modulus, size=self.rank))

    def _identity(self) -> Payload:
        return (0,) * self.rank

    def _payloads(self) -> Iterator[Payload]:
        return itertools.product(range(self.modulus), repeat=self.rank)

    def _validate(self, payload: Payload) -> Payload:
        coords: Tuple[int, ...] = tuple(int(v) % self.modulus for v in payload)
        if len(coords) != self.rank:
            raise InvalidFamilyParams(f"vector of length {self.rank} expected, got {len(coords)}")
        return coords

    def basis(self):
        """Standard basis vectors e_0..e_{d-1}"""
        return [self.element(tuple(int(i == j) for i in range(self.rank))) for j in range(self.rank)]
