from schreierlab.sampling.rng import SeededRng, derive_trial_seed, mix64
from schreierlab.sampling.multiset import (
    GeneratorMultiset, sample_multiset, sample_set_distinct,
    invert_multiset, split_multiset, split_remainder
)
from schreierlab.sampling.uniformity import image_uniformity, element_uniformity
