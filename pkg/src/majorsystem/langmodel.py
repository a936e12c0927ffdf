"""Language models: Stupid Backoff n-grams, POS trigrams, templates.

Scores are Stupid Backoff scores, not probabilities: the highest-order
n-gram with a nonzero count wins, each level of backoff multiplies by
alpha, and the base case is a plain unigram relative frequency.  No
normalization is applied, so scores over a context need not sum to 1.

Training counts every window of length 1..n over each sentence padded
with n-1 start markers and one end marker, so backoff denominators
exist for marker contexts too.  total_tokens counts corpus tokens
only, markers excluded.
"""

from __future__ import annotations

import gzip
import pickle
from bisect import bisect_right
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from random import Random

from .corpus import TaggedSentence

__all__ = [
    "START",
    "END",
    "SKIPPABLE_TAGS",
    "NgramModel",
    "PosTrigramModel",
    "SentenceTemplate",
    "TemplateStore",
    "EmptyTemplateStoreError",
    "ModelCacheError",
    "training_streams",
    "extract_templates",
    "save_models",
    "load_models",
]

START = "<s>"
END = "</s>"

# tags a template may leave unfilled when no candidate word fits
SKIPPABLE_TAGS = frozenset(["DET", "ADJ", "ADV"])

_CACHE_VERSION = 1


class EmptyTemplateStoreError(Exception):
    """No corpus sentence survived the template filters."""


class ModelCacheError(Exception):
    """Model cache file is unreadable, stale, or from another version."""


class NgramModel:
    """Token n-gram counts with Stupid Backoff scoring."""

    def __init__(self, n: int, alpha: float, counts: dict[tuple[str, ...], int],
                 total_tokens: int):
        self.n = n
        self.alpha = alpha
        self.counts = counts
        self.total_tokens = total_tokens

    @classmethod
    def train(cls, sentences: Iterable[Sequence[str]], n: int = 3,
              alpha: float = 0.1) -> "NgramModel":
        """Count all 1..n windows over marker-padded sentences."""
        if n < 1:
            raise ValueError("n must be at least 1")
        counts: Counter[tuple[str, ...]] = Counter()
        total = 0
        pad = (START,) * (n - 1)
        for sentence in sentences:
            padded = pad + tuple(sentence) + (END,)
            total += len(sentence)
            length = len(padded)
            for i in range(length):
                top = min(n, length - i)
                for k in range(1, top + 1):
                    counts[padded[i:i + k]] += 1
        return cls(n, alpha, dict(counts), total)

    def start_context(self) -> tuple[str, ...]:
        """The sentence-initial context of n-1 start markers."""
        return (START,) * (self.n - 1)

    def score(self, context: Sequence[str], token: str) -> float:
        """Stupid Backoff score of token after context.

        Context longer than n-1 is truncated to its last n-1 tokens.
        Returns 0.0 only for tokens unseen even as unigrams.
        """
        context = tuple(context)
        if len(context) > self.n - 1:
            context = context[len(context) - (self.n - 1):]
        factor = 1.0
        counts = self.counts
        while context:
            hit = counts.get(context + (token,))
            if hit:
                return factor * hit / counts[context]
            factor *= self.alpha
            context = context[1:]
        return factor * counts.get((token,), 0) / self.total_tokens


class PosTrigramModel(NgramModel):
    """Trigram model over universal tag sequences."""

    def most_likely_tags(self, context: Sequence[str]) -> list[str]:
        """Tags ranked by backoff score after context.

        Only tags with nonzero score (seen in training) are returned,
        highest score first, ties alphabetical.
        """
        scored = [(tag, self.score(context, tag))
                  for tag in sorted(set(key[0] for key in self.counts if len(key) == 1))
                  if tag not in (START, END)]
        ranked = [(tag, s) for tag, s in scored if s > 0.0]
        ranked.sort(key=lambda item: (-item[1], item[0]))
        return [tag for tag, _ in ranked]


def training_streams(sentences: Iterable[TaggedSentence],
                     ) -> tuple[list[list[str]], list[list[str]]]:
    """Split tagged sentences into word and tag training streams.

    Punctuation tokens (universal tag ".") are dropped from both
    streams; sentences left empty are skipped entirely.
    """
    word_sentences: list[list[str]] = []
    tag_sentences: list[list[str]] = []
    for sentence in sentences:
        words = [word for word, tag in sentence if tag != "."]
        if not words:
            continue
        word_sentences.append(words)
        tag_sentences.append([tag for _, tag in sentence if tag != "."])
    return word_sentences, tag_sentences


@dataclass(frozen=True)
class SentenceTemplate:
    tags: tuple[str, ...]
    frequency: int


def guaranteed_word_count(tags: Sequence[str],
                          skippable: frozenset[str] = SKIPPABLE_TAGS) -> int:
    """Words a template yields even if every skippable slot is skipped.

    Punctuation slots never yield a word, so "." is excluded as well.
    """
    return sum(1 for tag in tags if tag != "." and tag not in skippable)


class TemplateStore:
    """Frequency-weighted pool of full-sentence tag templates."""

    def __init__(self, templates: Sequence[SentenceTemplate]):
        if not templates:
            raise EmptyTemplateStoreError("template store is empty")
        self.templates = list(templates)
        self._cumulative: list[int] = []
        running = 0
        for template in self.templates:
            running += template.frequency
            self._cumulative.append(running)
        self.total_frequency = running

    def __len__(self) -> int:
        return len(self.templates)

    def __iter__(self):
        return iter(self.templates)

    def sample(self, rng: Random) -> SentenceTemplate:
        """Draw a template with probability proportional to frequency."""
        point = rng.random() * self.total_frequency
        return self.templates[bisect_right(self._cumulative, point)]


def extract_templates(sentences: Iterable[TaggedSentence], top_k: int = 100,
                      min_words: int = 5,
                      skippable: frozenset[str] = SKIPPABLE_TAGS) -> TemplateStore:
    """Collect the most frequent usable sentence templates.

    A sentence's template is its full universal-tag sequence.  A
    template is usable when it contains a VERB, no NUM, no X, and
    guarantees at least min_words words.  The top_k usable templates by
    frequency are kept (ties: fewer slots first, then alphabetical).
    """
    counts: Counter[tuple[str, ...]] = Counter()
    for sentence in sentences:
        tags = tuple(tag for _, tag in sentence)
        if not tags:
            continue
        if "VERB" not in tags or "NUM" in tags or "X" in tags:
            continue
        if guaranteed_word_count(tags, skippable) < min_words:
            continue
        counts[tags] += 1
    if not counts:
        raise EmptyTemplateStoreError("no sentence passed the template filters")
    ranked = sorted(counts.items(), key=lambda item: (-item[1], len(item[0]), item[0]))
    return TemplateStore(
        [SentenceTemplate(tags, frequency) for tags, frequency in ranked[:top_k]])


def _model_payload(model: NgramModel) -> dict:
    return {"n": model.n, "alpha": model.alpha, "counts": model.counts,
            "total_tokens": model.total_tokens}


def save_models(path: str | Path, word_model: NgramModel, pos_model: PosTrigramModel,
                templates: TemplateStore, key: str) -> None:
    """Persist models keyed by a content hash, byte-stable across runs."""
    payload = {
        "version": _CACHE_VERSION,
        "key": key,
        "word_model": _model_payload(word_model),
        "pos_model": _model_payload(pos_model),
        "templates": [(t.tags, t.frequency) for t in templates],
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as handle:
        # fixed mtime and no filename keep rebuilt caches byte-identical
        with gzip.GzipFile(fileobj=handle, mode="wb", filename="", mtime=0) as zipped:
            pickle.dump(payload, zipped, protocol=4)


def load_models(path: str | Path,
                key: str | None = None) -> tuple[NgramModel, PosTrigramModel, TemplateStore]:
    """Load models saved by save_models, checking version and key."""
    path = Path(path)
    try:
        with gzip.open(path, "rb") as handle:
            payload = pickle.load(handle)
    except (OSError, pickle.UnpicklingError, EOFError) as exc:
        raise ModelCacheError(f"{path}: unreadable model cache") from exc
    if not isinstance(payload, dict) or payload.get("version") != _CACHE_VERSION:
        raise ModelCacheError(f"{path}: unsupported model cache version")
    if key is not None and payload.get("key") != key:
        raise ModelCacheError(f"{path}: cache key mismatch")
    word = payload["word_model"]
    pos = payload["pos_model"]
    word_model = NgramModel(word["n"], word["alpha"], word["counts"], word["total_tokens"])
    pos_model = PosTrigramModel(pos["n"], pos["alpha"], pos["counts"], pos["total_tokens"])
    templates = TemplateStore(
        [SentenceTemplate(tuple(tags), frequency)
         for tags, frequency in payload["templates"]])
    return word_model, pos_model, templates
