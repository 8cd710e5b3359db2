"""Fuzzy span matching: content-word BLEU with an inclusive 0.5 threshold.

Decides whether a span written in generated code refers to the same thing as
a seeded data-dictionary entry.  The comparison is asymmetric: the candidate
is the span from the code, the reference is the stored entry.

Score definition (normative for this artifact, and mirrored verbatim by the
execution harness so both sides reach identical doubles):
    N = min(max_order, len(candidate), len(reference))
    p_1 = clipped unigram matches / len(candidate); zero matches => score 0
    p_i (i >= 2) = (clipped matches + 1) / (windows + 1)
    BP = 1 if len(candidate) >= len(reference) else exp(1 - len(r)/len(c))
    score = BP * exp((ln p_1 + ... + ln p_N) / N)

Log terms accumulate in order 1..N, and ln/exp are the fixed portable ports
from castbridge.portmath, not the platform math library: platform libraries
disagree in the last ulp, and the score contract is bit-for-bit.
"""

from __future__ import annotations

import string
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from castbridge.portmath import portable_exp, portable_log

DEFAULT_STOPWORDS = frozenset(
    {
        "the", "a", "an", "this", "that", "these", "those",
        "my", "your", "his", "her", "its", "our", "their",
        "of", "in", "on", "at", "to", "for", "from", "with", "by",
        "about", "as", "into", "over", "after", "before",
        "all",
    }
)


@dataclass(frozen=True)
class MatcherConfig:
    stopwords: frozenset[str] = DEFAULT_STOPWORDS
    threshold: float = 0.5
    max_order: int = 4

    def __post_init__(self) -> None:
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must be in [0, 1]: {self.threshold}")
        if self.max_order < 1:
            raise ValueError(f"max_order must be >= 1: {self.max_order}")


def normalize_span(text: str, cfg: MatcherConfig = MatcherConfig()) -> list[str]:
    """Lowercase, split, strip token-edge punctuation, drop stopwords."""
    out = []
    for raw in text.lower().split():
        token = raw.strip(string.punctuation)
        if token and token not in cfg.stopwords:
            out.append(token)
    return out


def _ngram_counts(tokens: Sequence[str], order: int) -> Counter:
    return Counter(
        tuple(tokens[i : i + order]) for i in range(len(tokens) - order + 1)
    )


def bleu_score(
    candidate: Sequence[str],
    reference: Sequence[str],
    cfg: MatcherConfig = MatcherConfig(),
) -> float:
    n = min(cfg.max_order, len(candidate), len(reference))
    if n == 0:
        return 0.0
    log_sum = 0.0
    for order in range(1, n + 1):
        cand_counts = _ngram_counts(candidate, order)
        ref_counts = _ngram_counts(reference, order)
        matches = sum(
            min(count, ref_counts[gram]) for gram, count in cand_counts.items()
        )
        total = len(candidate) - order + 1
        if order == 1:
            if matches == 0:
                return 0.0
            p = matches / total
        else:
            p = (matches + 1) / (total + 1)
        log_sum += portable_log(p)
    if len(candidate) >= len(reference):
        bp = 1.0
    else:
        bp = portable_exp(1.0 - len(reference) / len(candidate))
    return bp * portable_exp(log_sum / n)


def spans_match(
    candidate: str, reference: str, cfg: MatcherConfig = MatcherConfig()
) -> bool:
    """True when the normalized-span BLEU reaches the (inclusive) threshold."""
    score = bleu_score(
        normalize_span(candidate, cfg), normalize_span(reference, cfg), cfg
    )
    return score >= cfg.threshold


def match_score(
    candidate: str, reference: str, cfg: MatcherConfig = MatcherConfig()
) -> float:
    """The normalized-span BLEU itself (what spans_match thresholds)."""
    return bleu_score(
        normalize_span(candidate, cfg), normalize_span(reference, cfg), cfg
    )
