"""Evaluation protocol: classification metrics, coverage-constrained subsets,
coefficient grid search, and a speed/size benchmark.

Ground truth is binary (positive/negative) while predictions are ternary: a
neutral prediction counts as wrong for accuracy, as a false negative of the
true class for F1, and as "not positive" in the binarized MCC table.
"""

import math
import os
import time
from dataclasses import dataclass, replace
from itertools import product
from typing import Dict, Iterable, List, Sequence, Tuple

from .engine import (
    POLARITY_NEGATIVE, POLARITY_NEUTRAL, POLARITY_POSITIVE, SELECTOR_COMBINED,
    SELECTOR_LM, SELECTOR_XLEX, ModelConfig, sentence_sentiment,
)
from .merge import CombinedLexicon, read_combined_csv
from .textprep import LanguageResources

TRUE_CLASSES = (POLARITY_POSITIVE, POLARITY_NEGATIVE)
PRED_CLASSES = (POLARITY_POSITIVE, POLARITY_NEGATIVE, POLARITY_NEUTRAL)

DEFAULT_GRID_VALUES = (0.1, 0.3, 0.5, 0.7, 0.9)
GRID_C_LMO = 0.5

LabeledSentence = Tuple[str, str]


class EmptyDataset(ValueError):
    pass


@dataclass
class EvalReport:
    n: int
    accuracy: float
    f1_per_class: Dict[str, float]
    f1_macro: float
    mcc: float
    confusion: List[List[int]]  # rows: true pos/neg; cols: pred pos/neg/neutral
    unanswered: int

    def precision_recall_support(self, cls: str) -> Tuple[float, float, int]:
        i = TRUE_CLASSES.index(cls)
        j = PRED_CLASSES.index(cls)
        tp = self.confusion[i][j]
        support = sum(self.confusion[i])
        predicted = sum(row[j] for row in self.confusion)
        precision = tp / predicted if predicted else 0.0
        recall = tp / support if support else 0.0
        return precision, recall, support


def _metrics_from_confusion(confusion: List[List[int]]) -> Tuple[float, Dict[str, float], float, float]:
    n = sum(sum(row) for row in confusion)
    accuracy = sum(confusion[i][i] for i in range(2)) / n

    f1_per_class = {}
    for i, cls in enumerate(TRUE_CLASSES):
        tp = confusion[i][i]
        fn = sum(confusion[i]) - tp
        fp = sum(confusion[k][i] for k in range(2) if k != i)
        denom = 2 * tp + fp + fn
        f1_per_class[cls] = (2 * tp / denom) if denom else 0.0
    f1_macro = sum(f1_per_class.values()) / len(f1_per_class)

    # binarized positive-vs-rest; neutral predictions land on the "rest" side
    tp = confusion[0][0]
    fn = confusion[0][1] + confusion[0][2]
    fp = confusion[1][0]
    tn = confusion[1][1] + confusion[1][2]
    denom = math.sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn))
    mcc = ((tp * tn - fp * fn) / denom) if denom else 0.0
    return accuracy, f1_per_class, f1_macro, mcc


def classify_all(sentences: Iterable[str], lexicon: CombinedLexicon,
                 config: ModelConfig, res: LanguageResources) -> List:
    return [sentence_sentiment(text, lexicon, config, res) for text in sentences]


def evaluate(sentences: Sequence[LabeledSentence], lexicon: CombinedLexicon,
             config: ModelConfig, res: LanguageResources) -> EvalReport:
    """Classify a labeled dataset and compute accuracy, per-class F1 and MCC."""
    if not sentences:
        raise EmptyDataset("no sentences to evaluate")
    confusion = [[0, 0, 0], [0, 0, 0]]
    for text, label in sentences:
        if label not in TRUE_CLASSES:
            raise ValueError(f"label must be positive/negative, got {label!r}")
        verdict = sentence_sentiment(text, lexicon, config, res)
        confusion[TRUE_CLASSES.index(label)][PRED_CLASSES.index(verdict.polarity)] += 1

    accuracy, f1_per_class, f1_macro, mcc = _metrics_from_confusion(confusion)
    unanswered = confusion[0][2] + confusion[1][2]
    return EvalReport(n=len(sentences), accuracy=accuracy, f1_per_class=f1_per_class,
                      f1_macro=f1_macro, mcc=mcc, confusion=confusion,
                      unanswered=unanswered)


def render_report(report: EvalReport) -> str:
    """Human-readable per-class precision/recall/F1/support table."""
    lines = [f"{'':<22}{'precision':>10}{'recall':>10}{'f1-score':>10}{'support':>10}", ""]
    rows = []
    for cls in TRUE_CLASSES:
        precision, recall, support = report.precision_recall_support(cls)
        f1 = report.f1_per_class[cls]
        rows.append((precision, recall, f1, support))
        lines.append(f"{cls + ' sentences':<22}{precision:>10.2f}{recall:>10.2f}"
                     f"{f1:>10.2f}{support:>10}")
    lines.append("")
    lines.append(f"{'accuracy':<22}{'':>10}{'':>10}{report.accuracy:>10.2f}{report.n:>10}")
    macro = tuple(sum(r[i] for r in rows) / len(rows) for i in range(3))
    weighted = tuple(sum(r[i] * r[3] for r in rows) / report.n for i in range(3))
    lines.append(f"{'macro avg':<22}{macro[0]:>10.2f}{macro[1]:>10.2f}{macro[2]:>10.2f}{report.n:>10}")
    lines.append(f"{'weighted avg':<22}{weighted[0]:>10.2f}{weighted[1]:>10.2f}{weighted[2]:>10.2f}{report.n:>10}")
    lines.append("")
    lines.append(f"mcc: {report.mcc:.4f}  unanswered: {report.unanswered}")
    return "\n".join(lines)


def report_to_dict(report: EvalReport) -> dict:
    return {
        "n": report.n,
        "accuracy": report.accuracy,
        "f1_per_class": report.f1_per_class,
        "f1_macro": report.f1_macro,
        "mcc": report.mcc,
        "confusion": report.confusion,
        "unanswered": report.unanswered,
    }


def lm_constrained_subset(sentences: Sequence[LabeledSentence],
                          lm_only_config: ModelConfig, lexicon: CombinedLexicon,
                          res: LanguageResources) -> List[LabeledSentence]:
    """Keep only the sentences for which the LM-only model gives an answer."""
    if lm_only_config.lexicon_selector != SELECTOR_LM:
        raise ValueError("lm_constrained_subset requires an LM-only config")
    subset = []
    for text, label in sentences:
        verdict = sentence_sentiment(text, lexicon, lm_only_config, res)
        if verdict.polarity != POLARITY_NEUTRAL:
            subset.append((text, label))
    return subset


Quadruple = Tuple[float, float, float, float]


@dataclass
class GridResult:
    best: Quadruple
    aggregated_average: float
    table: Dict[Quadruple, Dict[str, float]]


def grid_search(lexicons: Sequence[CombinedLexicon],
                datasets: Sequence[Sequence[LabeledSentence]],
                res: LanguageResources,
                values: Sequence[float] = DEFAULT_GRID_VALUES,
                features: Iterable[str] = ("shap_avg",),
                threads: int = 1) -> GridResult:
    """Sweep (c_xlp, c_xlo, c_lmp) over ``values``^3 with c_lmo held fixed.

    For every coefficient quadruple, each (lexicon source, selector, metric)
    cell averages its metric over the lexicon variants of that source and
    all evaluation datasets; the objective is the sum of all cell averages.
    Ties break toward the lexicographically smallest quadruple. Results are
    independent of ``threads``.
    """
    if not values:
        raise ValueError("values must be non-empty")
    if not lexicons or not datasets:
        raise EmptyDataset("grid search needs at least one lexicon and one dataset")
    feature_set = frozenset(features)

    def score(quad: Quadruple) -> Dict[str, float]:
        c_xlp, c_xlo, c_lmp, c_lmo = quad
        cells: Dict[str, List[float]] = {}
        for lexicon in lexicons:
            source = lexicon.source or "lexicon"
            for selector in (SELECTOR_XLEX, SELECTOR_COMBINED):
                config = ModelConfig(lexicon_selector=selector,
                                     decision_features=feature_set,
                                     c_xlp=c_xlp, c_xlo=c_xlo,
                                     c_lmp=c_lmp, c_lmo=c_lmo)
                for dataset in datasets:
                    report = evaluate(dataset, lexicon, config, res)
                    for metric, value in (("accuracy", report.accuracy),
                                          ("f1_macro", report.f1_macro),
                                          ("mcc", report.mcc)):
                        cells.setdefault(f"{source}|{selector}|{metric}", []).append(value)
        cell_means = {key: sum(vals) / len(vals) for key, vals in sorted(cells.items())}
        cell_means["aggregated_average"] = sum(cell_means.values())
        return cell_means

    quads = [(a, b, c, GRID_C_LMO) for a, b, c in product(sorted(values), repeat=3)]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            scored = list(pool.map(score, quads))
    else:
        scored = [score(q) for q in quads]

    table = dict(zip(quads, scored))
    best_quad = None
    best_score = -math.inf
    for quad in quads:
        aggregated = table[quad]["aggregated_average"]
        if aggregated > best_score or (aggregated == best_score and quad < best_quad):
            best_score = aggregated
            best_quad = quad
    return GridResult(best=best_quad, aggregated_average=best_score, table=table)


@dataclass
class BenchmarkReport:
    repetitions: int
    times_seconds: List[float]
    mean_seconds: float
    sentences_per_second: float
    lexicon_bytes: int


def benchmark(sentences: Sequence[str], lexicon_path, config: ModelConfig,
              repetitions: int, res: LanguageResources) -> BenchmarkReport:
    """Time full-list classification per repetition and report lexicon size."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    lexicon = read_combined_csv(lexicon_path)
    times = []
    for _ in range(repetitions):
        start = time.perf_counter()
        classify_all(sentences, lexicon, config, res)
        times.append(time.perf_counter() - start)
    mean = sum(times) / len(times)
    throughput = (len(sentences) / mean) if sentences and mean > 0 else 0.0
    return BenchmarkReport(repetitions=repetitions, times_seconds=times,
                           mean_seconds=mean, sentences_per_second=throughput,
                           lexicon_bytes=os.path.getsize(lexicon_path))
