"""Shapley attribution of a sentence's positive-class score to its tokens.

Tokens are features; a coalition is a token subset kept in the sentence (the
rest are occluded). For short sentences the Shapley value is computed by exact
subset enumeration; longer ones fall back to seeded permutation sampling.
Attributions explain the score's movement away from the empty-sentence base
value, so positive values push toward the positive class.
"""

import itertools
import math
import random
from typing import List

from .models import SentimentModel

EXACT_LIMIT = 12          # 2^12 coalition evaluations at most
SAMPLE_PERMUTATIONS = 200


class ExplainerFailure(RuntimeError):
    pass


def _coalition_score(model: SentimentModel, tokens: List[str], keep) -> float:
    return model.positive_score([tokens[i] for i in sorted(keep)])


def _exact_shapley(model: SentimentModel, tokens: List[str]) -> List[float]:
    n = len(tokens)
    indices = range(n)
    # score every coalition once
    cache = {}
    for r in range(n + 1):
        for subset in itertools.combinations(indices, r):
            cache[subset] = _coalition_score(model, tokens, subset)

    values = []
    for i in indices:
        others = [j for j in indices if j != i]
        total = 0.0
        for r in range(n):
            weight = math.factorial(r) * math.factorial(n - r - 1) / math.factorial(n)
            for subset in itertools.combinations(others, r):
                with_i = tuple(sorted(subset + (i,)))
                total += weight * (cache[with_i] - cache[subset])
        values.append(total)
    return values


def _sampled_shapley(model: SentimentModel, tokens: List[str],
                     permutations: int, seed: int) -> List[float]:
    n = len(tokens)
    rng = random.Random(seed)
    totals = [0.0] * n
    order = list(range(n))
    for _ in range(permutations):
        rng.shuffle(order)
        kept = []
        previous = _coalition_score(model, tokens, kept)
        for i in order:
            kept.append(i)
            current = _coalition_score(model, tokens, kept)
            totals[i] += current - previous
            previous = current
    return [t / permutations for t in totals]


def explain_sentence(model: SentimentModel, tokens: List[str],
                     seed: int = 0) -> List[float]:
    """Per-token attribution values for one tokenized sentence, clipped to [-1, 1]."""
    if not tokens:
        return []
    try:
        if len(tokens) <= EXACT_LIMIT:
            values = _exact_shapley(model, tokens)
        else:
            values = _sampled_shapley(model, tokens, SAMPLE_PERMUTATIONS, seed)
    except Exception as exc:
        raise ExplainerFailure(str(exc)) from exc
    if any(math.isnan(v) for v in values):
        raise ExplainerFailure("explainer produced NaN attribution")
    return [max(-1.0, min(1.0, v)) for v in values]
