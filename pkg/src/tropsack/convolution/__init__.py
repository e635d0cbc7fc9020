from .naive import minplus_naive, maxplus_naive, minplus_counting_fft
from .exactpoly import exact_convolve, poly_mult_3var, DegreeBoundError
from .segtree import ChminSegmentTree
from .engine import (ConvLevelState, DeadlineExceeded, EngineTrace,
                     ResidueClassPair, Segment, is_prime,
                     monotone_maxplus_rect, monotone_minplus_rect,
                     residue_split, sample_prime, tilde_convolution)
from .one_monotone import one_monotone_maxplus

__all__ = [
    "minplus_naive", "maxplus_naive", "minplus_counting_fft",
    "exact_convolve", "poly_mult_3var", "DegreeBoundError",
    "ChminSegmentTree", "ConvLevelState", "DeadlineExceeded", "EngineTrace",
    "ResidueClassPair", "Segment", "is_prime", "monotone_maxplus_rect",
    "monotone_minplus_rect", "residue_split", "sample_prime",
    "tilde_convolution", "one_monotone_maxplus",
]
