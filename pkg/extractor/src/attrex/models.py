"""Sentiment models the explainer can interrogate.

A model here is just a callable scoring a list of tokens with the probability
of the positive class. Models are chosen by identifier string:

  stub[:seed]   deterministic hash-based scorer, no dependencies
  hf:<name>     HuggingFace text-classification pipeline (optional extra)
"""

import hashlib
import math
from typing import List, Protocol


class ModelLoadError(RuntimeError):
    pass


class SentimentModel(Protocol):
    def positive_score(self, tokens: List[str]) -> float: ...


class StubModel:
    """Deterministic scorer for tests and offline runs.

    Each token gets a fixed weight in [-1, 1] from a hash of (seed, token);
    the sentence score is a logistic squash of the mean weight. Stable across
    processes and platforms.
    """

    def __init__(self, seed: int = 0):
        self.seed = seed

    def token_weight(self, token: str) -> float:
        digest = hashlib.sha256(f"{self.seed}:{token.lower()}".encode()).digest()
        return int.from_bytes(digest[:8], "big") / float(2 ** 63) - 1.0

    def positive_score(self, tokens: List[str]) -> float:
        if not tokens:
            return 0.5
        mean = sum(self.token_weight(t) for t in tokens) / len(tokens)
        return 1.0 / (1.0 + math.exp(-4.0 * mean))


class HuggingFaceModel:
    """Wraps a transformers text-classification pipeline (lazy import)."""

    def __init__(self, name: str):
        try:
            from transformers import pipeline
        except ImportError as exc:
            raise ModelLoadError(
                "transformers is not installed; use the 'transformers' extra "
                "or a stub model") from exc
        try:
            self._pipe = pipeline("text-classification", model=name, top_k=None)
        except Exception as exc:  # model download/load can fail many ways
            raise ModelLoadError(f"could not load model {name!r}: {exc}") from exc

    def positive_score(self, tokens: List[str]) -> float:
        results = self._pipe(" ".join(tokens))[0]
        for item in results:
            if item["label"].lower() in ("positive", "label_1", "pos"):
                return float(item["score"])
        # binary model exposing only the negative class
        return 1.0 - float(results[0]["score"])


def load_model(identifier: str) -> SentimentModel:
    if identifier == "stub":
        return StubModel()
    if identifier.startswith("stub:"):
        try:
            return StubModel(seed=int(identifier.split(":", 1)[1]))
        except ValueError:
            raise ModelLoadError(f"bad stub seed in {identifier!r}") from None
    if identifier.startswith("hf:"):
        return HuggingFaceModel(identifier.split(":", 1)[1])
    raise ModelLoadError(f"unknown model identifier {identifier!r}")
