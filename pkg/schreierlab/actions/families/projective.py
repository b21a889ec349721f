"""
PGL(2,p) acting on the projective line P^1(F_p).

Point x < p is [x:1] and point p is infinity [1:0]. A matrix [[a,b],[c,d]]
acts on row vectors from the right, [x:y] -> [xa+yc : xb+yd], so products
compose left to right. Payloads are normalized so that the first nonzero
entry of (a, b, c, d) is 1.
"""
from typing import Iterator
import itertools
import math
import numpy as np
from schreierlab.actions.base_action import BaseAction
from schreierlab.actions.element import Payload
from schreierlab.actions.family_spec import FamilyName, FamilySpec
from schreierlab.actions.modular import check_prime, inverse_mod, inverse_mod_array
from schreierlab.errors import InvalidFamilyParams


class ProjectiveAction(BaseAction):
    """PGL(2,p) on the p+1 points of the projective line"""
    family = FamilyName.PROJECTIVE

    def __init__(self, spec: FamilySpec):
        self.prime = spec.get("p")
        if not check_prime(self.prime):
            raise InvalidFamilyParams(f"{spec}: p must be a prime below 2^31")
        p = self.prime
        order = p * (p * p - 1)
        super().__init__(spec, p + 1, order, math.log(order))

    def _normalize(self, a: int, b: int, c: int, d: int) -> Payload:
        p = self.prime
        lead = next(v for v in (a, b, c, d) if v % p)
        scale = inverse_mod(lead, p)
        return tuple((v * scale) % p for v in (a, b, c, d))

    def _determinant(self, payload: Payload) -> int:
        a, b, c, d = payload
        return (a * d - b * c) % self.prime

    def _act_many(self, payload: Payload, points: np.ndarray) -> np.ndarray:
        a, b, c, d = payload
        p = self.prime
        x = points.astype(np.int64)
        at_infinity = x == p
        numerator = np.where(at_infinity, a, (a * x + c) % p)
        denominator = np.where(at_infinity, b, (b * x + d) % p)
        to_infinity = denominator == 0
        inverse = inverse_mod_array(np.where(to_infinity, 1, denominator), p)
        return np.where(to_infinity, p, (numerator * inverse) % p)

    def _compose(self, first: Payload, second: Payload) -> Payload:
        a1, b1, c1, d1 = first
        a2, b2, c2, d2 = second
        return self._normalize(
            a1 * a2 + b1 * c2, a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2, c1 * b2 + d1 * d2,
        )

    def _invert(self, payload: Payload) -> Payload:
        a, b, c, d = payload
        # adjugate is a scalar multiple of the inverse
        return self._normalize(d, -b, -c, a)

    def _sample(self, rng) -> Payload:
        # uniform over GL(2,p), then collapse the scalar class
        while True:
            candidate = tuple(int(v) for v in rng.integers(self.prime, size=4))
            if self._determinant(candidate):
                return self._normalize(*candidate)

    def _identity(self) -> Payload:
        return (1, 0, 0, 1)

    def _payloads(self) -> Iterator[Payload]:
        p = self.prime
        for b, c, d in itertools.product(range(p), repeat=3):
            if (d - b * c) % p:
                yield (1, b, c, d)
        for c, d in itertools.product(range(1, p), range(p)):
            yield (0, 1, c, d)

    def _validate(self, payload: Payload) -> Payload:
        entries = tuple(int(v) % self.prime for v in payload)
        if len(entries) != 4:
            raise InvalidFamilyParams(f"2x2 matrix expected as (a, b, c, d), got {payload}")
        if not self._determinant(entries):
            raise InvalidFamilyParams(f"matrix {entries} is singular mod {self.prime}")
        return self._normalize(*entries)
