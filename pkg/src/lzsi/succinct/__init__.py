"""Succinct building blocks used by the index."""
from .dac import DAC
from .permutation import Permutation
from .plain import PlainBitmap
from .sparse import DEFAULT_SAMPLE_RATE, SparseBitmap
from .wavelet import WaveletTree

__all__ = ["DAC", "DEFAULT_SAMPLE_RATE", "Permutation", "PlainBitmap", "SparseBitmap", "WaveletTree"]
