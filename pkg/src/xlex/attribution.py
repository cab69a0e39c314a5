"""Ingestion of per-token attribution exports.

The wire format is a CSV with header ``sentence_id,token,value`` carrying one
row per token occurrence, where ``value`` is the token's signed contribution
(in [-1, 1]) to the positive sentiment of its sentence.
"""

import csv
import io
import math
from dataclasses import dataclass
from typing import BinaryIO, Dict, Iterable, List, Tuple, Union

from .textprep import LanguageResources, is_valid_word

VALUE_TOLERANCE = 1e-9

ATTRIBUTION_HEADER = ["sentence_id", "token", "value"]


class MalformedRow(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ValueOutOfRange(ValueError):
    def __init__(self, line_no: int, value: float):
        super().__init__(f"line {line_no}: |{value}| exceeds 1")
        self.line_no = line_no
        self.value = value


@dataclass(frozen=True)
class AttributionRecord:
    sentence_id: int
    token: str
    value: float


@dataclass
class WordStats:
    """Aggregate statistics over the absolute attribution values of one word."""

    word: str
    count: int
    shap_sum: float
    shap_max: float
    shap_min: float

    @property
    def shap_avg(self) -> float:
        return self.shap_sum / self.count


def parse_attribution_file(stream: Union[BinaryIO, io.TextIOBase, Iterable[str]]) -> List[AttributionRecord]:
    """Parse an attribution CSV stream into records, preserving row order."""
    if hasattr(stream, "read") and isinstance(stream.read(0), bytes):
        stream = io.TextIOWrapper(stream, encoding="utf-8")
    reader = csv.reader(stream)

    records = []
    for line_no, row in enumerate(reader, start=1):
        if line_no == 1:
            if row != ATTRIBUTION_HEADER:
                raise MalformedRow(1, f"expected header {','.join(ATTRIBUTION_HEADER)!r}")
            continue
        if not row:
            continue
        if len(row) != 3:
            raise MalformedRow(line_no, f"expected 3 fields, got {len(row)}")
        sid_text, token, value_text = row
        try:
            sentence_id = int(sid_text)
        except ValueError:
            raise MalformedRow(line_no, f"bad sentence_id {sid_text!r}") from None
        if sentence_id < 0:
            raise MalformedRow(line_no, f"negative sentence_id {sentence_id}")
        if not token:
            raise MalformedRow(line_no, "empty token")
        try:
            value = float(value_text)
        except ValueError:
            raise MalformedRow(line_no, f"bad value {value_text!r}") from None
        if abs(value) > 1 + VALUE_TOLERANCE:
            raise ValueOutOfRange(line_no, value)
        records.append(AttributionRecord(sentence_id, token, value))
    return records


def split_by_polarity(records: Iterable[AttributionRecord]) -> Tuple[List[Tuple[str, float]], List[Tuple[str, float]]]:
    """Split records by attribution sign into (positive, negative) word lists.

    Tokens are lowercased, values become absolute, and zero-valued records
    are dropped since they contribute to neither polarity.
    """
    positive, negative = [], []
    for rec in records:
        if rec.value > 0:
            positive.append((rec.token.lower(), rec.value))
        elif rec.value < 0:
            negative.append((rec.token.lower(), -rec.value))
    return positive, negative


def accumulate_word_stats(raw: Iterable[Tuple[str, float]]) -> Dict[str, WordStats]:
    """Group (word, absvalue) pairs into per-word count/sum/max/min stats.

    Sums use ``math.fsum`` so the result is independent of input order.
    """
    values: Dict[str, List[float]] = {}
    for word, value in raw:
        values.setdefault(word, []).append(value)
    return {
        word: WordStats(word=word, count=len(vals), shap_sum=math.fsum(vals),
                        shap_max=max(vals), shap_min=min(vals))
        for word, vals in values.items()
    }


def postprocess(table: Dict[str, WordStats], res: LanguageResources) -> Dict[str, WordStats]:
    """Keep only rows whose word passes the dictionary/stopword/length filter."""
    return {w: s for w, s in table.items() if is_valid_word(w, res)}
