"""Compressed self-index over LZ77 and LZ-End parsings."""
from . import container
from .container import dump, dumps, load, loads
from .errors import (BadMagicError, ChecksumError, FormatError, LZSIError, OutOfRangeError,
                     TruncatedError, UnsupportedVersionError, ValidationError)
from .index import VARIANTS, ExtractTrace, IndexConfig, IndexStats, LZIndex, build_index, lz_bits
from .occurrences import OccurrenceSet
from .parsing import (Flavor, Parsing, Phrase, compute_height, compute_source_depths, parse,
                      parse_lz77, parse_lzend, validate_parsing)

__version__ = "0.1.0"

__all__ = [
    "BadMagicError", "ChecksumError", "ExtractTrace", "Flavor", "FormatError", "IndexConfig",
    "IndexStats", "LZIndex", "LZSIError", "OccurrenceSet", "OutOfRangeError", "Parsing", "Phrase",
    "TruncatedError", "UnsupportedVersionError", "VARIANTS", "ValidationError", "build_index",
    "compute_height", "compute_source_depths", "container", "dump", "dumps", "load", "loads",
    "lz_bits", "parse", "parse_lz77", "parse_lzend", "validate_parsing",
]
