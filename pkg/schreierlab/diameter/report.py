from dataclasses import dataclass, asdict
from enum import Enum
from typing import Optional


class DiameterMethod(Enum):
    ALL_PAIRS = "all-pairs"
    PIVOT_BOUNDS = "pivot-bounds"


@dataclass(frozen=True)
class DiameterReport:
    """
    Directed diameter of one graph, either exact or as certified bounds.

    A disconnected graph carries connected=False and no numbers at all.
    """
    connected: bool
    method: DiameterMethod
    lower: Optional[int] = None
    upper: Optional[int] = None
    exact: Optional[int] = None
    pivots_used: int = 0

    def __post_init__(self):
        if not self.connected:
            if (self.lower, self.upper, self.exact) != (None, None, None):
                raise ValueError("a disconnected report carries no diameter values")
            return
        if self.lower is None or self.upper is None:
            raise ValueError("a connected report needs both bounds")
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        if self.exact is not None and not self.lower == self.upper == self.exact:
            raise ValueError("exact diameter must equal both bounds")

    @classmethod
    def disconnected(cls, method: DiameterMethod) -> "DiameterReport":
        return cls(connected=False, method=method)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["method"] = self.method.value
        return data
