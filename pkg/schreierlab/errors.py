"""
Exception hierarchy shared by every schreierlab module.

All errors derive from SchreierLabError so the CLI can separate runtime
failures (exit 2) from usage errors (exit 1).
"""
from typing import Optional


class SchreierLabError(Exception):
    """Base class for all library errors"""


class InvalidFamilyParams(SchreierLabError, ValueError):
    """Family parameters do not describe a valid transitive action"""


class FamilyMismatch(SchreierLabError):
    """A group element was used with an action of another family"""


class PointOutOfRange(SchreierLabError, ValueError):
    """A point index lies outside [0, n)"""


class BudgetExceeded(SchreierLabError):
    """A computation needs more work (or a larger group) than allowed"""
    def __init__(self, required: Optional[int], budget: int, what: str = "work"):
        self.required = required
        self.budget = budget
        needed = "unknown" if required is None else str(required)
        super().__init__(f"{what} {needed} exceeds budget {budget}")


class OrderUnknown(SchreierLabError):
    """The exact group order does not fit a machine word"""


class RetryExhausted(SchreierLabError):
    """Distinct-element sampling gave up"""


class SizesExceedK(SchreierLabError, ValueError):
    """Requested split sizes add up to more than the multiset size"""


class InvalidMultisetSize(SchreierLabError, ValueError):
    """A multiset of size < 1 was requested"""


class EmptyGeneratorSet(SchreierLabError, ValueError):
    """A graph was requested on an empty generator multiset"""


class Disconnected(SchreierLabError):
    """The Schreier graph is not strongly connected"""


class PreconditionUnmet(SchreierLabError):
    """A lemma's hypothesis does not hold for the given parameters"""
    def __init__(self, condition: str):
        self.condition = condition
        super().__init__(f"precondition unmet: {condition}")


class DegenerateSchedule(SchreierLabError):
    """The growth schedule has D = 0 or h = 0"""


class ScheduleInfeasible(SchreierLabError):
    """A growth schedule violates one of its feasibility inequalities"""
    def __init__(self, inequality: str):
        self.inequality = inequality
        super().__init__(f"schedule infeasible: {inequality} fails")


class PipelineStageFailed(SchreierLabError):
    """A stage of the diameter pipeline did not produce its certificate"""
    def __init__(self, stage: str, reason: str = ""):
        self.stage = stage
        self.reason = reason
        message = f"pipeline stage '{stage}' failed"
        if reason:
            message += f": {reason}"
        super().__init__(message)


class UsageError(SchreierLabError, ValueError):
    """Bad command line"""
