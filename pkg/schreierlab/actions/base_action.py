"""
Base class for transitive group actions G acting on points 0..n-1.

Every family uses the RIGHT action convention: compose(g, h) applies g
first, so act(compose(g, h), p) == act(h, act(g, p)).
"""
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Iterator, List, Optional
import logging
import numpy as np
from schreierlab.actions.element import GroupElement, Payload
from schreierlab.actions.family_spec import FamilyName, FamilySpec
from schreierlab.errors import BudgetExceeded, FamilyMismatch, InvalidFamilyParams, PointOutOfRange

if TYPE_CHECKING:
    from schreierlab.sampling.rng import SeededRng

logger = logging.getLogger(__name__)

# exact orders are kept only below this bound
WORD_LIMIT = 2**63

def index_dtype(n: int) -> np.dtype:
    """Smallest signed dtype holding point indices below n"""
    return np.dtype(np.int32) if n < 2**31 else np.dtype(np.int64)


class BaseAction(ABC):
    """Base class for group-action families"""
    family: FamilyName
    is_regular: bool = False

    def __init__(self, spec: FamilySpec, degree: int, group_order: Optional[int], group_order_log: float):
        if spec.family != self.family:
            raise InvalidFamilyParams(f"{type(self).__name__} cannot build {spec}")
        if degree < 1:
            raise InvalidFamilyParams(f"{spec} has an empty domain")
        if degree >= 2**31:
            raise InvalidFamilyParams(f"{spec} has degree {degree}, too large to tabulate")
        self.spec = spec
        self.degree = degree
        self.group_order: Optional[int] = (
            group_order if group_order is not None and group_order < WORD_LIMIT else None
        )
        self.group_order_log = group_order_log
        if self.group_order is not None:
            if self.group_order < degree or self.group_order % degree != 0:
                raise InvalidFamilyParams(
                    f"{spec}: |G| = {self.group_order} is not a positive multiple of n = {degree}"
                )
        self.dtype = index_dtype(degree)

    @property
    def stabilizer_order(self) -> Optional[int]:
        """|G|/n, the number of elements fixing any given point"""
        if self.group_order is None:
            return None
        return self.group_order // self.degree

    @abstractmethod
    def _act_many(self, payload: Payload, points: np.ndarray) -> np.ndarray:
        """Images of an array of points - implemented by families"""

    @abstractmethod
    def _compose(self, first: Payload, second: Payload) -> Payload:
        """Payload of the product applying `first` then `second`"""

    @abstractmethod
    def _invert(self, payload: Payload) -> Payload:
        """Payload of the inverse element"""

    @abstractmethod
    def _sample(self, rng: "SeededRng") -> Payload:
        """Exactly uniform payload"""

    @abstractmethod
    def _identity(self) -> Payload:
        """Payload of the identity"""

    @abstractmethod
    def _payloads(self) -> Iterator[Payload]:
        """Every payload of the group exactly once"""

    @abstractmethod
    def _validate(self, payload: Payload) -> Payload:
        """Normalize a payload, raising InvalidFamilyParams if it is not an element"""

    def element(self, payload: Payload) -> GroupElement:
        """Build a validated element of this family"""
        return GroupElement(self.family, self._validate(payload))

    def identity(self) -> GroupElement:
        return GroupElement(self.family, self._identity())

    def check(self, g: GroupElement) -> None:
        if g.family != self.family:
            raise FamilyMismatch(f"element of {g.family.value} used with {self.spec}")

    def act(self, g: GroupElement, p: int) -> int:
        """Image of point p under g"""
        self.check(g)
        if not 0 <= p < self.degree:
            raise PointOutOfRange(f"point {p} outside [0, {self.degree})")
        return int(self._act_many(g.payload, np.array([p], dtype=self.dtype))[0])

    def act_many(self, g: GroupElement, points: np.ndarray) -> np.ndarray:
        """Images of an array of points under g, same order"""
        self.check(g)
        points = np.asarray(points, dtype=self.dtype)
        return self._act_many(g.payload, points).astype(self.dtype, copy=False)

    def compose(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self.check(g)
        self.check(h)
        return GroupElement(self.family, self._compose(g.payload, h.payload))

    def invert(self, g: GroupElement) -> GroupElement:
        self.check(g)
        return GroupElement(self.family, self._invert(g.payload))

    def sample_uniform(self, rng: "SeededRng") -> GroupElement:
        return GroupElement(self.family, self._sample(rng))

    def materialize(self, g: GroupElement) -> np.ndarray:
        """Permutation table t with t[p] = act(g, p)"""
        return self.act_many(g, np.arange(self.degree, dtype=self.dtype))

    def enumerate_group(self, budget: int) -> List[GroupElement]:
        """Every element exactly once; refuses groups larger than budget"""
        if self.group_order is None or self.group_order > budget:
            raise BudgetExceeded(self.group_order, budget, what="group order")
        logger.debug("Enumerating %d elements of %s", self.group_order, self.spec)
        return [GroupElement(self.family, payload) for payload in self._payloads()]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec}, n={self.degree})"
