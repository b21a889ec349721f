from typing import Iterator
import itertools
import math
import numpy as np
from schreierlab.actions.base_action import BaseAction
from schreierlab.actions.element import Payload
from schreierlab.actions.family_spec import FamilyName, FamilySpec
from schreierlab.errors import InvalidFamilyParams


class DihedralAction(BaseAction):
    """
    Dihedral group of order 2m on the m vertices of an m-gon.

    The payload (r, f) acts as p -> (-1)^f * p + r mod m.
    """
    family = FamilyName.DIHEDRAL

    def __init__(self, spec: FamilySpec):
        self.modulus = spec.get("m")
        if self.modulus < 1:
            raise InvalidFamilyParams(f"{spec}: m must be at least 1")
        super().__init__(spec, self.modulus, 2 * self.modulus, math.log(2 * self.modulus))

    def _act_many(self, payload: Payload, points: np.ndarray) -> np.ndarray:
        shift, flip = payload
        points = points.astype(np.int64)
        if flip:
            points = -points
        return (points + shift) % self.modulus

    def _compose(self, first: Payload, second: Payload) -> Payload:
        r1, f1 = first
        r2, f2 = second
        sign = -1 if f2 else 1
        return ((sign * r1 + r2) % self.modulus, f1 ^ f2)

    def _invert(self, payload: Payload) -> Payload:
        shift, flip = payload
        sign = -1 if flip else 1
        return ((-sign * shift) % self.modulus, flip)

    def _sample(self, rng) -> Payload:
        return (rng.integers(self.modulus), rng.integers(2))

    def _identity(self) -> Payload:
        return (0, 0)

    def _payloads(self) -> Iterator[Payload]:
        return itertools.product(range(self.modulus), (0, 1))

    def _validate(self, payload: Payload) -> Payload:
        shift, flip = payload
        if flip not in (0, 1):
            raise InvalidFamilyParams(f"reflection bit must be 0 or 1, got {flip}")
        return (int(shift) % self.modulus, int(flip))
