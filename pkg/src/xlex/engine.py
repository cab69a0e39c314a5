"""Lexicon-based sentence sentiment scoring.

A word's contribution is built from cumulative feature values: the selected
category's features summed with the sign of that category (positive >= 0,
negative <= 0), and the opposite category's features signed the other way.
Coefficients weight the four (lexicon x role) terms; a sentence's value is
the sum over its token occurrences and its polarity is the sign of that sum.
"""

from dataclasses import dataclass
from typing import FrozenSet, Optional

from .merge import CATEGORY_NONE, CombinedEntry, CombinedLexicon
from .textprep import LanguageResources, lemmatize, tokenize

SELECTOR_XLEX = "xlex"
SELECTOR_LM = "lm"
SELECTOR_COMBINED = "combined"
SELECTORS = (SELECTOR_XLEX, SELECTOR_LM, SELECTOR_COMBINED)

FEATURE_AVG = "shap_avg"
FEATURE_RATIO = "shap_ratio"
FEATURE_COUNT = "count"
ALL_FEATURES = (FEATURE_AVG, FEATURE_RATIO, FEATURE_COUNT)

POLARITY_POSITIVE = "positive"
POLARITY_NEGATIVE = "negative"
POLARITY_NEUTRAL = "neutral"

_OPPOSITE_FIELD = {
    FEATURE_AVG: "shap_avg_opp",
    FEATURE_RATIO: "shap_ratio_opp",
    FEATURE_COUNT: "count_opp",
}


@dataclass(frozen=True)
class ModelConfig:
    lexicon_selector: str = SELECTOR_COMBINED
    decision_features: FrozenSet[str] = frozenset({FEATURE_AVG})
    c_xlp: float = 0.3
    c_xlo: float = 0.1
    c_lmp: float = 0.1
    c_lmo: float = 0.5

    def __post_init__(self):
        if self.lexicon_selector not in SELECTORS:
            raise ValueError(f"unknown lexicon selector {self.lexicon_selector!r}")
        if not self.decision_features:
            raise ValueError("decision_features must be non-empty")
        unknown = set(self.decision_features) - set(ALL_FEATURES)
        if unknown:
            raise ValueError(f"unknown decision features {sorted(unknown)}")
        for name in ("c_xlp", "c_xlo", "c_lmp", "c_lmo"):
            if getattr(self, name) <= 0:
                raise ValueError(f"coefficient {name} must be > 0")


@dataclass(frozen=True)
class SentenceVerdict:
    value: float
    polarity: str
    matched_words: int


def cumulative_value(entry: Optional[CombinedEntry], side: str, role: str,
                     features: FrozenSet[str]) -> float:
    """Signed sum of the selected features for one (lexicon, role) group.

    Returns 0 for words absent from the lexicon or from the given side. The
    result carries the sign of the category it represents: the opposite role
    of a positive-selected word is a negative-category contribution and so
    comes out <= 0 (and vice versa).
    """
    if entry is None:
        return 0.0
    group = entry.side(side)
    if group.category == CATEGORY_NONE:
        return 0.0
    if role == "primary":
        total = sum(getattr(group, f) for f in features)
        sign = 1.0 if group.category == POLARITY_POSITIVE else -1.0
    else:
        total = sum(getattr(group, _OPPOSITE_FIELD[f]) for f in features)
        sign = -1.0 if group.category == POLARITY_POSITIVE else 1.0
    return sign * total


def word_sentiment(word: str, lexicon: CombinedLexicon, config: ModelConfig) -> float:
    """Coefficient-weighted sentiment value of one lemmatized word."""
    entry = lexicon.entries.get(word)
    if entry is None:
        return 0.0
    features = config.decision_features
    value = 0.0
    if config.lexicon_selector in (SELECTOR_XLEX, SELECTOR_COMBINED):
        value += config.c_xlp * cumulative_value(entry, "xlex", "primary", features)
        value += config.c_xlo * cumulative_value(entry, "xlex", "opposite", features)
    if config.lexicon_selector in (SELECTOR_LM, SELECTOR_COMBINED):
        value += config.c_lmp * cumulative_value(entry, "lm", "primary", features)
        value += config.c_lmo * cumulative_value(entry, "lm", "opposite", features)
    return value


def sentence_sentiment(text: str, lexicon: CombinedLexicon, config: ModelConfig,
                       res: LanguageResources) -> SentenceVerdict:
    """Score a sentence as the sum of its token occurrences' word sentiments.

    No validity filtering happens here: unknown words simply score 0. A word
    appearing twice contributes twice.
    """
    value = 0.0
    matched = 0
    for token in tokenize(text):
        lemma = lemmatize(token.lower, res)
        contribution = word_sentiment(lemma, lexicon, config)
        if contribution != 0.0:
            matched += 1
        value += contribution
    if value > 0:
        polarity = POLARITY_POSITIVE
    elif value < 0:
        polarity = POLARITY_NEGATIVE
    else:
        polarity = POLARITY_NEUTRAL
    return SentenceVerdict(value=value, polarity=polarity, matched_words=matched)
