"""Unsupervised lexicon adaptation for a transformation-based POS tagger."""

from .adapter import AdaptConfig, AdaptReport, adapt, apply_ing_heuristic, propose_entries
from .corpus import FreqTable, Token, count_frequencies, merge_counts, tokenize
from .evaluation import EvalReport, collapse_tag, error_reduction, score
from .lexicon import Lexicon, coverage, lookup, parse_lexicon, serialize_lexicon
from .morphology import (
    OrthoClass,
    SuffixRule,
    classify_ortho,
    default_suffix_rules,
    ing_decision,
    match_suffix,
    ortho_tags,
)
from .tagged import TaggedToken
from .tbl import ContextualRule, Template, apply_rule, initial_annotate, parse_rules, serialize_rules, tag, train

__version__ = "0.1.0"
