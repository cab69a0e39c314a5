"""Deterministic text normalization shared by lexicon construction and scoring.

All operations are pure functions over an immutable ``LanguageResources``
bundle, so they are safe to use from any number of threads.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping


class ResourceError(ValueError):
    """A language resource file is missing or inconsistent."""


@dataclass(frozen=True)
class Token:
    surface: str
    lower: str


@dataclass(frozen=True)
class LanguageResources:
    """Lemma table, English dictionary and stopword list.

    ``lemma_map`` values are fixed points: looking up a lemma returns itself
    (enforced at load time), which makes lemmatization idempotent.
    """

    lemma_map: Mapping[str, str] = field(default_factory=dict)
    english_words: frozenset = frozenset()
    stopwords: frozenset = frozenset()


def _read_lines(path: Path) -> list:
    lines = []
    with open(path, encoding="utf-8") as f:
        for raw in f:
            line = raw.strip()
            if line and not line.startswith("#"):
                lines.append(line)
    return lines


def load_resources(directory) -> LanguageResources:
    """Load ``lemmas.tsv``, ``english.txt`` and ``stopwords.txt`` from a directory.

    Lemma chains (a -> b -> c) are collapsed so that every stored lemma is a
    fixed point; a cyclic lemma file raises ``ResourceError``.
    """
    directory = Path(directory)
    for name in ("lemmas.tsv", "english.txt", "stopwords.txt"):
        if not (directory / name).exists():
            raise ResourceError(f"missing resource file: {directory / name}")

    lemma_map = {}
    for i, line in enumerate(_read_lines(directory / "lemmas.tsv"), start=1):
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise ResourceError(f"lemmas.tsv line {i}: expected 'surface<TAB>lemma'")
        lemma_map[parts[0].lower()] = parts[1].lower()

    for word in list(lemma_map):
        seen = {word}
        target = lemma_map[word]
        while target in lemma_map and lemma_map[target] != target:
            if target in seen:
                raise ResourceError(f"lemma cycle involving {word!r}")
            seen.add(target)
            target = lemma_map[target]
        lemma_map[word] = target
    lemma_map = {k: v for k, v in lemma_map.items() if k != v}

    english = frozenset(w.lower() for w in _read_lines(directory / "english.txt"))
    stop = frozenset(w.lower() for w in _read_lines(directory / "stopwords.txt"))
    return LanguageResources(lemma_map=lemma_map, english_words=english, stopwords=stop)


def default_resources() -> LanguageResources:
    """Load the resource files bundled with the package."""
    return load_resources(Path(__file__).parent / "resources")


def _trim(chunk: str) -> str:
    # keep internal hyphens/apostrophes by stripping only from the ends
    start, end = 0, len(chunk)
    while start < end and not chunk[start].isalnum():
        start += 1
    while end > start and not chunk[end - 1].isalnum():
        end -= 1
    return chunk[start:end]


def tokenize(text: str) -> list:
    """Split on whitespace and strip non-alphanumeric edge characters."""
    tokens = []
    for chunk in text.split():
        core = _trim(chunk)
        if core:
            tokens.append(Token(surface=core, lower=core.lower()))
    return tokens


def lemmatize(word: str, res: LanguageResources) -> str:
    """Return the lemma for a lowercase word, or the word itself if unmapped."""
    return res.lemma_map.get(word, word)


def is_valid_word(word: str, res: LanguageResources) -> bool:
    """True iff the word is long enough, in the dictionary and not a stopword."""
    return len(word) >= 3 and word in res.english_words and word not in res.stopwords
