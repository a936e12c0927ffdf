"""Decoding, round-trip checking, and encoding comparison metrics.

Decoding is the easy direction of the system: look each word up in
the lexicon and concatenate the digit strings of its canonical
pronunciation.  It is the left inverse every encoder is tested
against.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass

from .corpus import Lexicon
from .encoders import Encoding
from .langmodel import NgramModel
from .phonetics import pronunciation_to_digits

__all__ = [
    "UnknownWordError",
    "RoundtripReport",
    "Metrics",
    "decode",
    "check_roundtrip",
    "compute_metrics",
]

logger = logging.getLogger(__name__)

# stripped from token edges when an exact lookup fails; apostrophes
# stay because they are part of lexicon spellings ('em, dogs')
_EDGE_PUNCTUATION = ".,;:!?\"()"


class UnknownWordError(Exception):
    """A token is not in the lexicon even after punctuation stripping."""

    def __init__(self, word: str):
        super().__init__(f"unknown word: {word!r}")
        self.word = word


@dataclass(frozen=True)
class RoundtripReport:
    ok: bool
    position: int | None = None
    reason: str | None = None


@dataclass(frozen=True)
class Metrics:
    word_count: int
    sentence_count: int
    digits_per_word: float
    mean_word_frequency: float
    model_score: float


def decode(words: Iterable[str], lexicon: Lexicon) -> str:
    """Spell a word sequence back into its digit string.

    Tokens are lowercased and looked up as written first, so entries
    like "p.m." survive; only then is edge punctuation stripped.
    Tokens that are pure punctuation are ignored.  A word whose
    alternate pronunciations disagree on digits is decoded by its
    first listed pronunciation, with a warning.
    """
    digits = []
    for token in words:
        entry = lexicon.get(token.lower())
        if entry is None:
            stripped = token.lower().strip(_EDGE_PUNCTUATION)
            if not stripped:
                continue
            entry = lexicon.get(stripped)
        if entry is None:
            raise UnknownWordError(token)
        alternates = {pronunciation_to_digits(p) for p in entry.pronunciations}
        if len(alternates) > 1:
            logger.warning("word %r has pronunciations spelling %s; using %r",
                           entry.word, sorted(alternates), entry.digits)
        digits.append(entry.digits)
    return "".join(digits)


def check_roundtrip(encoding: Encoding, lexicon: Lexicon) -> RoundtripReport:
    """Verify the encoding decodes to exactly its source digits.

    Checks every word is in the lexicon, every span is that word's
    digit string, and the spans concatenate to the source.  Reports
    the first offending word position on failure.
    """
    position = 0
    for sentence, spans in zip(encoding.sentences, encoding.spans):
        for word, span in zip(sentence, spans):
            entry = lexicon.get(word)
            if entry is None:
                return RoundtripReport(False, position, f"word {word!r} not in lexicon")
            if entry.digits != span:
                return RoundtripReport(
                    False, position,
                    f"word {word!r} spells {entry.digits!r}, span says {span!r}")
            position += 1
    joined = "".join(encoding.word_spans)
    if joined != encoding.source_digits:
        return RoundtripReport(
            False, None,
            f"spans spell {joined!r}, source is {encoding.source_digits!r}")
    return RoundtripReport(True)


def compute_metrics(encoding: Encoding, lexicon: Lexicon,
                    model: NgramModel) -> Metrics:
    """Size, frequency, and model-score summary of an encoding.

    model_score is the summed log backoff score of each word given the
    words before it, context restarting at sentence boundaries.  An
    empty encoding has zero counts and scores.
    """
    word_count = encoding.word_count
    digits_per_word = (
        len(encoding.source_digits) / word_count if word_count else 0.0)
    frequencies = [lexicon[word].frequency for word in encoding.words]
    mean_frequency = sum(frequencies) / len(frequencies) if frequencies else 0.0
    score = 0.0
    for sentence in encoding.sentences:
        context = model.start_context()
        for word in sentence:
            value = model.score(context, word)
            score += math.log(value) if value > 0.0 else -math.inf
            context = context + (word,)
    return Metrics(
        word_count=word_count,
        sentence_count=len(encoding.sentences),
        digits_per_word=digits_per_word,
        mean_word_frequency=mean_frequency,
        model_score=score,
    )
