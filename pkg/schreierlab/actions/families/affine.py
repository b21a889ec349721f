from typing import Iterator
import itertools
import math
import numpy as np
from schreierlab.actions.base_action import BaseAction
from schreierlab.actions.element import Payload
from schreierlab.actions.family_spec import FamilyName, FamilySpec
from schreierlab.actions.modular import check_prime, inverse_mod
from schreierlab.errors import InvalidFamilyParams


class AffineAction(BaseAction):
    """AGL(1,p): the payload (a, b) acts as x -> a*x + b on F_p"""
    family = FamilyName.AFFINE

    def __init__(self, spec: FamilySpec):
        self.prime = spec.get("p")
        if not check_prime(self.prime):
            raise InvalidFamilyParams(f"{spec}: p must be a prime below 2^31")
        order = self.prime * (self.prime - 1)
        super().__init__(spec, self.prime, order, math.log(order) if order > 1 else 0.0)

    def _act_many(self, payload: Payload, points: np.ndarray) -> np.ndarray:
        a, b = payload
        return (points.astype(np.int64) * a + b) % self.prime

    def _compose(self, first: Payload, second: Payload) -> Payload:
        a1, b1 = first
        a2, b2 = second
        return ((a2 * a1) % self.prime, (a2 * b1 + b2) % self.prime)

    def _invert(self, payload: Payload) -> Payload:
        a, b = payload
        a_inv = inverse_mod(a, self.prime)
        return (a_inv, (-a_inv * b) % self.prime)

    def _sample(self, rng) -> Payload:
        return (1 + rng.integers(self.prime - 1), rng.integers(self.prime))

    def _identity(self) -> Payload:
        return (1, 0)

    def _payloads(self) -> Iterator[Payload]:
        return itertools.product(range(1, self.prime), range(self.prime))

    def _validate(self, payload: Payload) -> Payload:
        a, b = (int(v) % self.prime for v in payload)
        if math.gcd(a, self.prime) != 1:
            raise InvalidFamilyParams(f"affine multiplier {a} is not invertible mod {self.prime}")
        return (a, b)
