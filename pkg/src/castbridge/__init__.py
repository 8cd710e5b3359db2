"""castbridge: compact syntax trees for a Python subset, bracket text I/O,
dependency-tree-to-LIR rewriting, fuzzy span matching, and pass@k evaluation.
"""

from .brackets import (
    BracketError, EmptyDocument, Leaf, Node, Structure, TrailingContent,
    UnbalancedBrackets, label_set, linearize, parse_bracket,
)
from .cast import CAST_LABELS, MalformedCast, compactize, expand
from .matcher import (
    DEFAULT_STOPWORDS, MatcherConfig, bleu_score, match_score, normalize_span,
    spans_match,
)
from .metrics import (
    CATEGORIES, DomainError, ProblemResult, SampleOutcome, StageTrace,
    canonical_json, classify_sample, mean_pass_at_k, pass_at_k,
    results_document, summarize,
)
from .syntax import KindMismatch, UnsupportedConstruct, parse_fragment, parse_program, unparse
from .udlir import (
    CycleError, DepToken, DepTree, FormatError, LirNode, MultipleRoots,
    RuleFiring, apply_rules, lir_labels, lir_to_bracket, read_conllu,
    to_ordered_tree, yield_text,
)

__version__ = "0.1.0"

__all__ = [
    "BracketError", "EmptyDocument", "Leaf", "Node", "Structure",
    "TrailingContent", "UnbalancedBrackets", "label_set", "linearize",
    "parse_bracket",
    "CAST_LABELS", "MalformedCast", "compactize", "expand",
    "DEFAULT_STOPWORDS", "MatcherConfig", "bleu_score", "match_score",
    "normalize_span", "spans_match",
    "CATEGORIES", "DomainError", "ProblemResult", "SampleOutcome",
    "StageTrace", "canonical_json", "classify_sample", "mean_pass_at_k",
    "pass_at_k", "results_document", "summarize",
    "KindMismatch", "UnsupportedConstruct", "parse_fragment", "parse_program",
    "unparse",
    "CycleError", "DepToken", "DepTree", "FormatError", "LirNode",
    "MultipleRoots", "RuleFiring", "apply_rules", "lir_labels",
    "lir_to_bracket", "read_conllu", "to_ordered_tree", "yield_text",
    "__version__",
]
