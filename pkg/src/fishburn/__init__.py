"""Ascent sequences, (2+2)-free posets, and exact truncated generating functions."""

from .ascent import AscentSequence, StatVector, glue, parse, split, stats
from .bijection import poset_to_sequence, sequence_to_poset
from .poset import LevelPoset, StrictPoset
from .report import VerificationReport
from .series import TruncatedSeries

__all__ = [
    "AscentSequence",
    "LevelPoset",
    "StatVector",
    "StrictPoset",
    "TruncatedSeries",
    "VerificationReport",
    "glue",
    "parse",
    "poset_to_sequence",
    "sequence_to_poset",
    "split",
    "stats",
]

__version__ = "0.1.0"
