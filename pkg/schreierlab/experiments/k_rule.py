"""
Rules mapping a degree n to a generator count k.

    fixed:K         k = K
    power:EPS       k = ceil((log n)^(1+EPS))
    fraction:DELTA  k = ceil(n^DELTA)
"""
import math
from dataclasses import dataclass
from typing import Literal

from schreierlab.errors import UsageError

RuleKind = Literal["fixed", "power", "fraction"]

GRAMMAR = "fixed:K | power:EPS | fraction:DELTA"


@dataclass(frozen=True)
class KRule:
    kind: RuleKind
    value: float

    @classmethod
    def parse(cls, text: str) -> "KRule":
        kind, sep, raw = text.partition(':')
        if not sep or kind not in ("fixed", "power", "fraction"):
            raise UsageError(f"bad k rule '{text}', expected {GRAMMAR}")
        try:
            value = float(raw)
        except ValueError as e:
            raise UsageError(f"bad k rule value in '{text}'") from e
        if kind == "fixed" and (value < 1 or value != int(value)):
            raise UsageError(f"fixed k must be a positive integer, got '{raw}'")
        if kind != "fixed" and value <= 0:
            raise UsageError(f"{kind} exponent must be positive, got '{raw}'")
        return cls(kind, value)

    def k_for(self, n: int) -> int:
        if self.kind == "fixed":
            return int(self.value)
        if self.kind == "power":
            return max(1, math.ceil(math.log(n) ** (1 + self.value))) if n > 1 else 1
        return max(1, math.ceil(n ** self.value))

    def __str__(self) -> str:
        if self.kind == "fixed":
            return f"fixed:{int(self.value)}"
        return f"{self.kind}:{self.value:g}"
