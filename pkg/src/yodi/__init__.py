"""yodi: Yorùbá diacritics toolkit.

Parsing/stripping/validation of Yorùbá graphemes, parallel corpus
preparation, lattice-based diacritic restoration, MT-style evaluation,
OCR triage and an HTTP correction service.
"""

from .corpus import (
    AmbiguityReport,
    CorpusStats,
    Lexicon,
    ParallelPair,
    ambiguity_report,
    build_lexicon,
    corpus_stats,
    prepare_parallel,
    split_corpus,
    tokenize,
)
from .decoder import Lattice, Restoration, build_lattice, restore_unigram, restore_viterbi
from .graphemes import (
    Grapheme,
    Tone,
    Violation,
    compose,
    expansions,
    normalize,
    segment,
    strip_diacritics,
    validate,
)
from .metrics import BleuScore, EvalReport, bleu, error_analysis, perplexity, wer
from .ngram import NgramModel, train
from .ocr import CharMapTable, ReviewItem, map_superset, quality_score, triage

__version__ = "0.1.0"

__all__ = [
    "AmbiguityReport",
    "BleuScore",
    "CharMapTable",
    "CorpusStats",
    "EvalReport",
    "Grapheme",
    "Lattice",
    "Lexicon",
    "NgramModel",
    "ParallelPair",
    "Restoration",
    "ReviewItem",
    "Tone",
    "Violation",
    "ambiguity_report",
    "bleu",
    "build_lattice",
    "build_lexicon",
    "compose",
    "corpus_stats",
    "error_analysis",
    "expansions",
    "map_superset",
    "normalize",
    "perplexity",
    "prepare_parallel",
    "quality_score",
    "restore_unigram",
    "restore_viterbi",
    "segment",
    "split_corpus",
    "strip_diacritics",
    "tokenize",
    "train",
    "triage",
    "validate",
    "wer",
]
