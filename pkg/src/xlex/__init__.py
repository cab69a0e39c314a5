"""Explainable sentiment lexicon toolkit.

Builds sentiment lexicons from per-token model attribution exports, merges
them with the Loughran-McDonald word lists, and runs a fast lexicon-based
sentence classifier with evaluation, grid search and benchmarking support.
"""

__version__ = "0.1.0"

from .attribution import (
    AttributionRecord, MalformedRow, ValueOutOfRange, WordStats,
    accumulate_word_stats, parse_attribution_file, postprocess, split_by_polarity,
)
from .builder import (
    DuplicateWord, LexiconEntry, build_xlex, lemmatize_and_dedupe,
    merge_polarities, read_xlex_csv, resolve_cross_duplicates, write_xlex_csv,
)
from .engine import ModelConfig, SentenceVerdict, sentence_sentiment, word_sentiment
from .evaluation import (
    BenchmarkReport, EmptyDataset, EvalReport, GridResult, benchmark, evaluate,
    grid_search, lm_constrained_subset,
)
from .merge import (
    AlreadyNormalized, CombinedEntry, CombinedLexicon, DuplicateAcrossPolarity,
    combine, normalize, prepare_lm, read_combined_csv, write_combined_csv,
)
from .textprep import (
    LanguageResources, Token, default_resources, is_valid_word, lemmatize,
    load_resources, tokenize,
)
