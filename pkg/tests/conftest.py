import math
import random

import pytest

from xlex.attribution import AttributionRecord
from xlex.builder import LexiconEntry
from xlex.textprep import LanguageResources

WORD_POOL = [
    "profit", "profits", "loss", "losses", "gain", "gains", "decline",
    "declines", "growth", "surge", "drop", "rally", "slump", "recover",
    "upgrade", "downgrade", "strong", "weak", "beat", "miss", "record",
    "cut", "cuts", "raise", "raises", "risk", "risks", "deal", "deals",
    "merger", "debt", "cash", "margin", "margins", "win", "wins", "fail",
    "fails", "jump", "jumps", "fall", "falls", "rise", "rises", "improve",
    "improves", "worsen", "boost", "boosts", "plunge",
]


@pytest.fixture(scope="session")
def tiny_resources():
    """Small closed-world resources: every pool word valid, plurals lemmatized."""
    lemma_map = {
        "profits": "profit", "losses": "loss", "gains": "gain",
        "declines": "decline", "cuts": "cut", "raises": "raise",
        "risks": "risk", "deals": "deal", "margins": "margin",
        "wins": "win", "fails": "fail", "jumps": "jump", "falls": "fall",
        "rises": "rise", "improves": "improve", "boosts": "boost",
        "acquired": "acquire", "acquiring": "acquire", "winners": "winner",
    }
    english = set(WORD_POOL) | set(lemma_map) | set(lemma_map.values()) | {
        "acquire", "winner", "option", "abet", "abide", "writeoff", "flat",
        "surpasses", "abandon", "abandonment", "neutralword",
    }
    stopwords = {"the", "of", "and", "a", "to", "in"}
    return LanguageResources(lemma_map=lemma_map,
                             english_words=frozenset(english),
                             stopwords=frozenset(stopwords))


def random_records(rng: random.Random, n_records: int, n_words: int):
    """Random attribution records over the word pool, mixed signs and cases."""
    words = rng.sample(WORD_POOL, min(n_words, len(WORD_POOL)))
    records = []
    for i in range(n_records):
        word = rng.choice(words)
        if rng.random() < 0.1:
            word = word.capitalize()
        value = round(rng.uniform(-1, 1), 6)
        records.append(AttributionRecord(sentence_id=i // 8, token=word, value=value))
    return records


def brute_force_xlex(records, res):
    """Independent full-pipeline oracle: raw records -> explainable lexicon.

    Recomputes everything from first principles with per-word value lists
    and direct formula evaluation.
    """
    by_polarity = {"positive": {}, "negative": {}}
    for rec in records:
        if rec.value == 0:
            continue
        side = "positive" if rec.value > 0 else "negative"
        by_polarity[side].setdefault(rec.token.lower(), []).append(abs(rec.value))

    per_lemma = {"positive": {}, "negative": {}}
    for side, words in by_polarity.items():
        for word, vals in words.items():
            if len(word) < 3 or word not in res.english_words or word in res.stopwords:
                continue
            lemma = res.lemma_map.get(word, word)
            per_lemma[side].setdefault(lemma, []).append(vals)

    def stats(groups):
        flat = [v for vals in groups for v in vals]
        # word-level sums first, then the lemma-level sum, mirroring the
        # two-stage aggregation (each stage exactly rounded)
        word_sums = [math.fsum(vals) for vals in groups]
        return {
            "count": len(flat),
            "sum": math.fsum(word_sums),
            "max": max(flat),
            "min": min(flat),
        }

    pos = {w: stats(g) for w, g in per_lemma["positive"].items()}
    neg = {w: stats(g) for w, g in per_lemma["negative"].items()}

    lexicon = {}
    for word in set(pos) | set(neg):
        p, n = pos.get(word), neg.get(word)
        if p and n:
            selected, opposite, category = (p, n, "positive") if p["sum"] > n["sum"] \
                else (n, p, "negative")
        elif p:
            selected, opposite, category = p, None, "positive"
        else:
            selected, opposite, category = n, None, "negative"

        avg = selected["sum"] / selected["count"]
        if opposite is None:
            entry = LexiconEntry(word=word, category=category,
                                 count=selected["count"], shap_sum=selected["sum"],
                                 shap_avg=avg, shap_max=selected["max"],
                                 shap_min=selected["min"],
                                 count_total=selected["count"],
                                 shap_ratio=1.0, shap_ratio_opp=0.0)
        else:
            avg_opp = opposite["sum"] / opposite["count"]
            ratio = avg / (avg + avg_opp)
            entry = LexiconEntry(word=word, category=category,
                                 count=selected["count"], shap_sum=selected["sum"],
                                 shap_avg=avg, shap_max=selected["max"],
                                 shap_min=selected["min"],
                                 count_opp=opposite["count"],
                                 shap_sum_opp=opposite["sum"],
                                 shap_avg_opp=avg_opp,
                                 shap_max_opp=opposite["max"],
                                 shap_min_opp=opposite["min"],
                                 count_total=selected["count"] + opposite["count"],
                                 shap_ratio=ratio, shap_ratio_opp=1.0 - ratio)
        lexicon[word] = entry
    return lexicon
