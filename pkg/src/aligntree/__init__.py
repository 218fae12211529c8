"""Suffix trees for pairs of aligned texts."""
from __future__ import annotations

from .text_model import (
    SENTINEL, SENTINEL_B, Alignment, InconsistentAlignmentError, MalformedTextError,
    Text, align, compose, dumps_alignment, from_notation, loads_alignment, normalize,
    parse_notation, render,
)
from .suffix_tree import (
    ASuffixClass, InternalCorruptionError, LeafAnnotation, SuffixTree, Work,
    build_generalized, build_mccreight, has_two_chi_leaves, locus,
)
from .aligned_index import (
    AlignedBuild, AlignedIndex, ChunkAnalysis, Metrics, build_aligned,
    find_alpha_a, find_alpha_star, step_A, step_B, step_C,
)
from .search import InvalidPatternError, SearchResult, expand_all, find_pattern

__version__ = "0.1.0"

__all__ = [
    "SENTINEL", "SENTINEL_B", "Alignment", "InconsistentAlignmentError", "MalformedTextError",
    "Text", "align", "compose", "dumps_alignment", "from_notation", "loads_alignment",
    "normalize", "parse_notation", "render",
    "ASuffixClass", "InternalCorruptionError", "LeafAnnotation", "SuffixTree", "Work",
    "build_generalized", "build_mccreight", "has_two_chi_leaves", "locus",
    "AlignedBuild", "AlignedIndex", "ChunkAnalysis", "Metrics", "build_aligned",
    "find_alpha_a", "find_alpha_star", "step_A", "step_B", "step_C",
    "InvalidPatternError", "SearchResult", "expand_all", "find_pattern",
]
