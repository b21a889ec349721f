"""
Chi-square checks that the samplers are uniform, on the group itself and on
the images of a point (uniform g sends any point to a uniform point).
"""
from typing import Dict
import numpy as np
from scipy.stats import chisquare
from schreierlab.actions.base_action import BaseAction
from schreierlab.actions.element import GroupElement
from schreierlab.sampling.rng import SeededRng


def image_uniformity(instance: BaseAction, rng: SeededRng, samples: int, point: int = 0) -> float:
    """p-value of point^g being uniform over Omega"""
    images = [instance.act(instance.sample_uniform(rng), point) for _ in range(samples)]
    counts = np.bincount(images, minlength=instance.degree)
    return float(chisquare(counts).pvalue)


def element_uniformity(instance: BaseAction, rng: SeededRng, samples: int, budget: int = 50_000) -> float:
    """p-value of sample_uniform being uniform over an enumerable G"""
    index: Dict[GroupElement, int] = {g: i for i, g in enumerate(instance.enumerate_group(budget))}
    counts = np.zeros(len(index), dtype=np.int64)
    for _ in range(samples):
        counts[index[instance.sample_uniform(rng)]] += 1
    return float(chisquare(counts).pvalue)
