"""Batch extraction: sentences in, attribution CSV out."""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List

from .explainer import ExplainerFailure, explain_sentence
from .models import load_model

log = logging.getLogger("attrex")

ATTRIBUTION_HEADER = ["sentence_id", "token", "value"]


@dataclass(frozen=True)
class ExtractionJob:
    input_path: Path
    model_id: str
    output_path: Path
    batch_size: int = 16

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError("batch size must be >= 1")


@dataclass
class ExtractionSummary:
    sentences: int
    rows: int
    failures: int


def read_sentences(path: Path) -> List[str]:
    return [line.rstrip("\n") for line in
            path.read_text(encoding="utf-8").splitlines() if line.strip()]


def extract_attributions(job: ExtractionJob) -> ExtractionSummary:
    """Explain every sentence and write the attribution CSV.

    Sentences the explainer fails on are skipped (their ids are not reused);
    the summary carries the failure count. Output rows are sentence-id-major,
    token-position-minor.
    """
    model = load_model(job.model_id)
    sentences = read_sentences(job.input_path)

    rows = 0
    failures = 0
    with open(job.output_path, "w", encoding="utf-8", newline="\n") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(ATTRIBUTION_HEADER)
        for start in range(0, len(sentences), job.batch_size):
            batch = sentences[start:start + job.batch_size]
            for offset, sentence in enumerate(batch):
                sentence_id = start + offset
                tokens = sentence.split()
                try:
                    values = explain_sentence(model, tokens, seed=sentence_id)
                except ExplainerFailure as exc:
                    log.warning("sentence %d skipped: %s", sentence_id, exc)
                    failures += 1
                    continue
                for token, value in zip(tokens, values):
                    writer.writerow([sentence_id, token, f"{value:.12g}"])
                    rows += 1

    summary = ExtractionSummary(sentences=len(sentences), rows=rows,
                                failures=failures)
    log.info("extracted %d rows from %d sentences (%d failed)",
             summary.rows, summary.sentences, summary.failures)
    return summary
