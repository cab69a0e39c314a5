"""Construction of the explainable lexicon from per-polarity word statistics.

Three steps: lemma-level aggregation within each polarity, resolution of
words that occur in both polarities (the winner keeps the loser's stats in
its ``*_opp`` columns), and the final single-table merge with a category
column.
"""

import csv
import math
from dataclasses import dataclass, replace
from typing import Dict, Iterable, Tuple

from .attribution import WordStats
from .textprep import LanguageResources, lemmatize

POSITIVE = "positive"
NEGATIVE = "negative"

SRC_XLEX = "XLex"
SRC_LM = "LM"

XLEX_HEADER = [
    "word", "category", "count", "shap_sum", "shap_avg", "shap_max", "shap_min",
    "count_total", "count_opp", "shap_sum_opp", "shap_avg_opp", "shap_max_opp",
    "shap_min_opp", "shap_ratio", "shap_ratio_opp", "src",
]


class DuplicateWord(ValueError):
    pass


@dataclass(frozen=True)
class LexiconEntry:
    word: str
    category: str
    count: int
    shap_sum: float
    shap_avg: float
    shap_max: float
    shap_min: float
    count_opp: int = 0
    shap_sum_opp: float = 0.0
    shap_avg_opp: float = 0.0
    shap_max_opp: float = 0.0
    shap_min_opp: float = 0.0
    count_total: int = 0
    shap_ratio: float = 1.0
    shap_ratio_opp: float = 0.0
    src: str = SRC_XLEX


# word -> LexiconEntry, one row per word
XLexLexicon = Dict[str, LexiconEntry]


def lemmatize_and_dedupe(table: Dict[str, WordStats], res: LanguageResources) -> Dict[str, WordStats]:
    """Replace words by their lemmas and merge rows that collide.

    count and shap_sum add up, shap_max/shap_min take the extrema, and the
    average falls out of sum/count.
    """
    groups: Dict[str, list] = {}
    for word, stats in table.items():
        groups.setdefault(lemmatize(word, res), []).append(stats)
    return {
        lemma: WordStats(
            word=lemma,
            count=sum(s.count for s in members),
            shap_sum=math.fsum(s.shap_sum for s in members),
            shap_max=max(s.shap_max for s in members),
            shap_min=min(s.shap_min for s in members),
        )
        for lemma, members in groups.items()
    }


def _entry_without_opposite(stats: WordStats) -> LexiconEntry:
    return LexiconEntry(
        word=stats.word, category="", count=stats.count, shap_sum=stats.shap_sum,
        shap_avg=stats.shap_avg, shap_max=stats.shap_max, shap_min=stats.shap_min,
        count_total=stats.count, shap_ratio=1.0, shap_ratio_opp=0.0,
    )


def _entry_with_opposite(selected: WordStats, opposite: WordStats) -> LexiconEntry:
    ratio = selected.shap_avg / (selected.shap_avg + opposite.shap_avg)
    return LexiconEntry(
        word=selected.word, category="", count=selected.count,
        shap_sum=selected.shap_sum, shap_avg=selected.shap_avg,
        shap_max=selected.shap_max, shap_min=selected.shap_min,
        count_opp=opposite.count, shap_sum_opp=opposite.shap_sum,
        shap_avg_opp=opposite.shap_avg, shap_max_opp=opposite.shap_max,
        shap_min_opp=opposite.shap_min,
        count_total=selected.count + opposite.count,
        shap_ratio=ratio, shap_ratio_opp=1.0 - ratio,
    )


def resolve_cross_duplicates(
    pos: Dict[str, WordStats], neg: Dict[str, WordStats]
) -> Tuple[Dict[str, LexiconEntry], Dict[str, LexiconEntry]]:
    """Assign each overlapping word to one polarity by higher shap_sum.

    Ties go to negative. The losing side's stats move into the winner's
    ``*_opp`` columns; words in only one table get shap_ratio 1 and zeroed
    opposite stats.
    """
    pos_out: Dict[str, LexiconEntry] = {}
    neg_out: Dict[str, LexiconEntry] = {}
    for word, stats in pos.items():
        other = neg.get(word)
        if other is None:
            pos_out[word] = _entry_without_opposite(stats)
        elif stats.shap_sum > other.shap_sum:
            pos_out[word] = _entry_with_opposite(stats, other)
        else:
            neg_out[word] = _entry_with_opposite(other, stats)
    for word, stats in neg.items():
        if word not in pos:
            neg_out[word] = _entry_without_opposite(stats)
    return pos_out, neg_out


def merge_polarities(pos: Dict[str, LexiconEntry], neg: Dict[str, LexiconEntry]) -> XLexLexicon:
    """Concatenate the two per-polarity tables, tagging each row's category."""
    overlap = set(pos) & set(neg)
    if overlap:
        raise DuplicateWord(f"words present in both polarities: {sorted(overlap)[:5]}")
    lexicon: XLexLexicon = {}
    for word, entry in pos.items():
        lexicon[word] = replace(entry, category=POSITIVE)
    for word, entry in neg.items():
        lexicon[word] = replace(entry, category=NEGATIVE)
    return lexicon


def build_xlex(pos_stats: Dict[str, WordStats], neg_stats: Dict[str, WordStats],
               res: LanguageResources) -> XLexLexicon:
    """Run the full lemma-merge / cross-resolution / polarity-merge pipeline."""
    pos = lemmatize_and_dedupe(pos_stats, res)
    neg = lemmatize_and_dedupe(neg_stats, res)
    pos_entries, neg_entries = resolve_cross_duplicates(pos, neg)
    return merge_polarities(pos_entries, neg_entries)


def format_real(x: float) -> str:
    return f"{x:.12g}"


def write_xlex_csv(lexicon: XLexLexicon, path) -> None:
    """Serialize the lexicon word-sorted with 12-significant-digit reals."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(XLEX_HEADER)
        for word in sorted(lexicon):
            e = lexicon[word]
            writer.writerow([
                e.word, e.category, e.count,
                format_real(e.shap_sum), format_real(e.shap_avg),
                format_real(e.shap_max), format_real(e.shap_min),
                e.count_total, e.count_opp,
                format_real(e.shap_sum_opp), format_real(e.shap_avg_opp),
                format_real(e.shap_max_opp), format_real(e.shap_min_opp),
                format_real(e.shap_ratio), format_real(e.shap_ratio_opp),
                e.src,
            ])


def read_xlex_csv(path) -> XLexLexicon:
    lexicon: XLexLexicon = {}
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != XLEX_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        for row in reader:
            entry = LexiconEntry(
                word=row["word"], category=row["category"],
                count=int(row["count"]),
                shap_sum=float(row["shap_sum"]), shap_avg=float(row["shap_avg"]),
                shap_max=float(row["shap_max"]), shap_min=float(row["shap_min"]),
                count_total=int(row["count_total"]), count_opp=int(row["count_opp"]),
                shap_sum_opp=float(row["shap_sum_opp"]),
                shap_avg_opp=float(row["shap_avg_opp"]),
                shap_max_opp=float(row["shap_max_opp"]),
                shap_min_opp=float(row["shap_min_opp"]),
                shap_ratio=float(row["shap_ratio"]),
                shap_ratio_opp=float(row["shap_ratio_opp"]),
                src=row["src"],
            )
            lexicon[entry.word] = entry
    return lexicon
