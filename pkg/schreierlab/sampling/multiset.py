"""
Generator multisets A ~ mu_G(k): k independent uniform draws kept in
sampling order, so the splits used by the growth arguments are reproducible.
"""
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple
import logging
from schreierlab.actions.base_action import BaseAction
from schreierlab.actions.element import GroupElement
from schreierlab.errors import (
    FamilyMismatch, InvalidMultisetSize, RetryExhausted, SizesExceedK
)
from schreierlab.sampling.rng import SeededRng

logger = logging.getLogger(__name__)

DEFAULT_RETRY_CAP = 10_000


@dataclass(frozen=True)
class GeneratorMultiset:
    """Ordered multiset of group elements from a single family"""
    elements: Tuple[GroupElement, ...]

    def __post_init__(self):
        families = {g.family for g in self.elements}
        if len(families) > 1:
            raise FamilyMismatch(f"multiset mixes families {sorted(f.value for f in families)}")

    @property
    def k(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __getitem__(self, index: int) -> GroupElement:
        return self.elements[index]

    def slice(self, start: int, stop: int) -> "GeneratorMultiset":
        return GeneratorMultiset(self.elements[start:stop])

    def concat(self, *others: "GeneratorMultiset") -> "GeneratorMultiset":
        elements = list(self.elements)
        for other in others:
            elements.extend(other.elements)
        return GeneratorMultiset(tuple(elements))


def sample_multiset(instance: BaseAction, k: int, rng: SeededRng) -> GeneratorMultiset:
    """k i.i.d. uniform elements, in draw order"""
    if k < 1:
        raise InvalidMultisetSize(f"multiset size must be at least 1, got {k}")
    return GeneratorMultiset(tuple(instance.sample_uniform(rng) for _ in range(k)))


def sample_set_distinct(
    instance: BaseAction,
    k: int,
    rng: SeededRng,
    retry_cap: int = DEFAULT_RETRY_CAP
) -> GeneratorMultiset:
    """
    k pairwise distinct elements, uniform over k-subsets.

    Duplicates are redrawn; after `retry_cap` rejected draws the sampler gives up.
    """
    if k < 1:
        raise InvalidMultisetSize(f"set size must be at least 1, got {k}")
    if instance.group_order is not None and k > instance.group_order:
        raise RetryExhausted(f"cannot draw {k} distinct elements from a group of order {instance.group_order}")

    chosen: List[GroupElement] = []
    seen = set()
    rejected = 0
    while len(chosen) < k:
        g = instance.sample_uniform(rng)
        if g in seen:
            rejected += 1
            if rejected > retry_cap:
                raise RetryExhausted(f"gave up after {retry_cap} duplicate draws with {len(chosen)}/{k} chosen")
            continue
        seen.add(g)
        chosen.append(g)
    return GeneratorMultiset(tuple(chosen))


def invert_multiset(instance: BaseAction, multiset: GeneratorMultiset) -> GeneratorMultiset:
    """Elementwise inverse, same order"""
    return GeneratorMultiset(tuple(instance.invert(g) for g in multiset))


def split_multiset(multiset: GeneratorMultiset, sizes: Sequence[int]) -> List[GeneratorMultiset]:
    """
    Consecutive disjoint slices of the given sizes, in sampling order.

    Elements past sum(sizes) form the discarded remainder, see split_remainder.
    Each slice of an i.i.d. sample is itself distributed as mu_G(size).
    """
    if any(size < 0 for size in sizes):
        raise SizesExceedK(f"negative split size in {list(sizes)}")
    if sum(sizes) > multiset.k:
        raise SizesExceedK(f"sizes {list(sizes)} add up to {sum(sizes)} > k = {multiset.k}")
    parts = []
    start = 0
    for size in sizes:
        parts.append(multiset.slice(start, start + size))
        start += size
    return parts


def split_remainder(multiset: GeneratorMultiset, sizes: Sequence[int]) -> GeneratorMultiset:
    """The part of the multiset a split with these sizes discards"""
    used = sum(sizes)
    if used > multiset.k:
        raise SizesExceedK(f"sizes {list(sizes)} add up to {used} > k = {multiset.k}")
    return multiset.slice(used, multiset.k)

