"""Maximal δ-subrepetitions of words, with runs, gapped repeats and oracles."""

from .errors import (AlphabetError, DeltaRangeError, DuplicateRepeatError, EmptyFactorError,
                     InternalInvariantError, OracleSizeError, PairMismatchError, ParseError,
                     PositionError, SubrepError)
from .lce import LceIndex, build_index
from .repeats import (AnnotatedRepeat, MaxRepeat, PositionLists, build_position_lists,
                      compute_gapped_repeats, generated_repeats, merge_by_key,
                      reprincipal_repeats)
from .runs import Run, RunGroups, annotated_runs, compute_runs, group_runs, lyndon_offset
from .stages import (PipelineStats, Subrepetition, find_subrepetitions,
                     find_subrepetitions_with_stats)
from .word import RationalDelta, Word, exponent, generate, load_word, min_period

__all__ = [
    "AlphabetError", "AnnotatedRepeat", "DeltaRangeError", "DuplicateRepeatError",
    "EmptyFactorError", "InternalInvariantError", "LceIndex", "MaxRepeat",
    "OracleSizeError", "PairMismatchError", "ParseError", "PipelineStats", "PositionError",
    "PositionLists", "RationalDelta", "Run", "RunGroups", "Subrepetition", "SubrepError",
    "Word", "annotated_runs", "build_index", "build_position_lists", "compute_gapped_repeats",
    "compute_runs", "exponent", "find_subrepetitions", "find_subrepetitions_with_stats",
    "generate", "generated_repeats", "group_runs", "load_word", "lyndon_offset",
    "merge_by_key", "min_period", "reprincipal_repeats",
]
