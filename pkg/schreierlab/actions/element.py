from typing import Hashable, Tuple, Union
import numpy as np
from schreierlab.actions.family_spec import FamilyName

# permutation families carry a read-only image table, the others a tuple of residues
Payload = Union[np.ndarray, int, Tuple[int, ...]]


class GroupElement:
    """
    One group element tagged with the family it belongs to.

    Elements are immutable; permutation payloads are stored as read-only
    numpy arrays and compared by content.
    """
    __slots__ = ('family', 'payload', '_key')

    def __init__(self, family: FamilyName, payload: Payload):
        if isinstance(payload, np.ndarray):
            payload = payload.copy() if payload.flags.writeable else payload
            payload.setflags(write=False)
            key: Hashable = payload.tobytes()
        else:
            key = payload
        object.__setattr__(self, 'family', family)
        object.__setattr__(self, 'payload', payload)
        object.__setattr__(self, '_key', key)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.family == other.family and self._key == other._key

    def __hash__(self) -> int:
        return hash((self.family, self._key))

    def __repr__(self) -> str:
        if isinstance(self.payload, np.ndarray):
            shown = self.payload.tolist() if self.payload.size <= 12 else f"<perm of {self.payload.size}>"
        else:
            shown = self.payload
        return f"GroupElement({self.family.value}, {shown})"
