"""Combination of the explainable lexicon with the Loughran-McDonald word lists.

The LM lists carry no statistics, so their entries get 1 for every selected
feature and 0 for every opposite feature. The combined table is a word-level
outer join with ``xlex_`` and ``lm_`` prefixed feature groups; missing sides
get category "none", zeroed numerics, and the other lexicon's name as src.
"""

import csv
import json
from dataclasses import dataclass, fields, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, Iterable, List

from .builder import (
    NEGATIVE, POSITIVE, SRC_LM, SRC_XLEX, LexiconEntry, XLexLexicon, format_real,
)
from .textprep import LanguageResources, lemmatize

CATEGORY_NONE = "none"

NUMERIC_FEATURES = [
    "count", "shap_sum", "shap_avg", "shap_max", "shap_min", "count_total",
    "count_opp", "shap_sum_opp", "shap_avg_opp", "shap_max_opp", "shap_min_opp",
    "shap_ratio", "shap_ratio_opp",
]

COMBINED_HEADER = ["word"] + [
    f"{prefix}_{name}"
    for prefix in ("xlex", "lm")
    for name in NUMERIC_FEATURES + ["category", "src"]
]


class DuplicateAcrossPolarity(ValueError):
    pass


class AlreadyNormalized(ValueError):
    pass


@dataclass(frozen=True)
class SideFeatures:
    """One lexicon's feature group within a combined row."""

    category: str
    src: str
    count: float = 0.0
    shap_sum: float = 0.0
    shap_avg: float = 0.0
    shap_max: float = 0.0
    shap_min: float = 0.0
    count_total: float = 0.0
    count_opp: float = 0.0
    shap_sum_opp: float = 0.0
    shap_avg_opp: float = 0.0
    shap_max_opp: float = 0.0
    shap_min_opp: float = 0.0
    shap_ratio: float = 0.0
    shap_ratio_opp: float = 0.0

    @classmethod
    def from_entry(cls, entry: LexiconEntry) -> "SideFeatures":
        return cls(
            category=entry.category, src=entry.src, count=entry.count,
            shap_sum=entry.shap_sum, shap_avg=entry.shap_avg,
            shap_max=entry.shap_max, shap_min=entry.shap_min,
            count_total=entry.count_total, count_opp=entry.count_opp,
            shap_sum_opp=entry.shap_sum_opp, shap_avg_opp=entry.shap_avg_opp,
            shap_max_opp=entry.shap_max_opp, shap_min_opp=entry.shap_min_opp,
            shap_ratio=entry.shap_ratio, shap_ratio_opp=entry.shap_ratio_opp,
        )

    @classmethod
    def absent(cls, src: str) -> "SideFeatures":
        """The all-zero group used when a word is missing from this lexicon."""
        return cls(category=CATEGORY_NONE, src=src)


@dataclass(frozen=True)
class CombinedEntry:
    word: str
    xlex: SideFeatures
    lm: SideFeatures

    def side(self, name: str) -> SideFeatures:
        return self.xlex if name == "xlex" else self.lm


@dataclass
class CombinedLexicon:
    entries: Dict[str, CombinedEntry]
    normalized: bool = False
    source: str = ""


def prepare_lm(pos_words: Iterable[str], neg_words: Iterable[str],
               res: LanguageResources) -> Dict[str, LexiconEntry]:
    """Turn raw LM word lists into lexicon entries with default feature values.

    Words are lowercased and lemmatized; duplicate lemmas within a polarity
    collapse to one instance. A lemma landing in both polarity lists is a
    data error.
    """
    table: Dict[str, LexiconEntry] = {}
    for words, category in ((pos_words, POSITIVE), (neg_words, NEGATIVE)):
        for word in words:
            lemma = lemmatize(word.lower(), res)
            existing = table.get(lemma)
            if existing is not None:
                if existing.category != category:
                    raise DuplicateAcrossPolarity(
                        f"{lemma!r} maps to both {existing.category} and {category}")
                continue
            table[lemma] = LexiconEntry(
                word=lemma, category=category, count=1, shap_sum=1.0,
                shap_avg=1.0, shap_max=1.0, shap_min=1.0, count_total=1,
                shap_ratio=1.0, shap_ratio_opp=0.0, src=SRC_LM,
            )
    return table


def combine(xlex: XLexLexicon, lm: Dict[str, LexiconEntry],
            source: str = "") -> CombinedLexicon:
    """Outer-join the two lexicons on word into prefixed feature groups."""
    entries: Dict[str, CombinedEntry] = {}
    for word in set(xlex) | set(lm):
        xlex_entry = xlex.get(word)
        lm_entry = lm.get(word)
        xlex_side = (SideFeatures.from_entry(xlex_entry) if xlex_entry is not None
                     else SideFeatures.absent(SRC_LM))
        lm_side = (SideFeatures.from_entry(lm_entry) if lm_entry is not None
                   else SideFeatures.absent(SRC_XLEX))
        entries[word] = CombinedEntry(word=word, xlex=xlex_side, lm=lm_side)
    return CombinedLexicon(entries=entries, normalized=False, source=source)


def normalize(lexicon: CombinedLexicon) -> CombinedLexicon:
    """Divide every numeric column by its maximum; all-zero columns stay put."""
    if lexicon.normalized:
        raise AlreadyNormalized("lexicon is already normalized")

    maxima = {}
    for prefix in ("xlex", "lm"):
        for name in NUMERIC_FEATURES:
            maxima[(prefix, name)] = max(
                (getattr(entry.side(prefix), name) for entry in lexicon.entries.values()),
                default=0.0,
            )

    def scale(side: SideFeatures, prefix: str) -> SideFeatures:
        updates = {}
        for name in NUMERIC_FEATURES:
            column_max = maxima[(prefix, name)]
            if column_max != 0.0:
                updates[name] = getattr(side, name) / column_max
        return replace(side, **updates)

    entries = {
        word: CombinedEntry(word=word, xlex=scale(e.xlex, "xlex"), lm=scale(e.lm, "lm"))
        for word, e in lexicon.entries.items()
    }
    return CombinedLexicon(entries=entries, normalized=True, source=lexicon.source)


def project(lexicon: CombinedLexicon, prefix: str) -> Dict[str, LexiconEntry]:
    """Recover one input lexicon from the combined table (rows with a category)."""
    out: Dict[str, LexiconEntry] = {}
    for word, entry in lexicon.entries.items():
        side = entry.side(prefix)
        if side.category == CATEGORY_NONE:
            continue
        out[word] = LexiconEntry(
            word=word, category=side.category,
            count=int(side.count), shap_sum=side.shap_sum, shap_avg=side.shap_avg,
            shap_max=side.shap_max, shap_min=side.shap_min,
            count_total=int(side.count_total), count_opp=int(side.count_opp),
            shap_sum_opp=side.shap_sum_opp, shap_avg_opp=side.shap_avg_opp,
            shap_max_opp=side.shap_max_opp, shap_min_opp=side.shap_min_opp,
            shap_ratio=side.shap_ratio, shap_ratio_opp=side.shap_ratio_opp,
            src=side.src,
        )
    return out


def write_combined_csv(lexicon: CombinedLexicon, path) -> None:
    """Write the word-sorted combined CSV plus its ``.meta.json`` sidecar."""
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(COMBINED_HEADER)
        for word in sorted(lexicon.entries):
            entry = lexicon.entries[word]
            row: List[str] = [word]
            for prefix in ("xlex", "lm"):
                side = entry.side(prefix)
                row.extend(format_real(getattr(side, name)) for name in NUMERIC_FEATURES)
                row.append(side.category)
                row.append(side.src)
            writer.writerow(row)

    meta = {
        "format_version": 1,
        "normalized": lexicon.normalized,
        "source": lexicon.source,
        "built_at": datetime.now(timezone.utc).isoformat(),
        "words": len(lexicon.entries),
    }
    path.with_suffix(".meta.json").write_text(json.dumps(meta, indent=2) + "\n",
                                              encoding="utf-8")


def read_combined_csv(path) -> CombinedLexicon:
    path = Path(path)
    entries: Dict[str, CombinedEntry] = {}
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != COMBINED_HEADER:
            raise ValueError(f"{path}: unexpected header")
        for row in reader:
            sides = {}
            for prefix in ("xlex", "lm"):
                values = {name: float(row[f"{prefix}_{name}"]) for name in NUMERIC_FEATURES}
                sides[prefix] = SideFeatures(category=row[f"{prefix}_category"],
                                             src=row[f"{prefix}_src"], **values)
            entries[row["word"]] = CombinedEntry(word=row["word"],
                                                 xlex=sides["xlex"], lm=sides["lm"])

    normalized, source = False, ""
    meta_path = path.with_suffix(".meta.json")
    if meta_path.exists():
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        normalized = bool(meta.get("normalized", False))
        source = meta.get("source", "")
    return CombinedLexicon(entries=entries, normalized=normalized, source=source)
