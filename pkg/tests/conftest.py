"""Shared fixtures: the real-data resource bundle and toy lexicon builders.

The real lexicon and models build once per session (reusing the
repository cache when it is fresh).  Toy lexicons are constructed
directly so unit tests stay hand-checkable; their pronunciations are
synthesized one encoding consonant per digit, which keeps
pronunciation_to_digits consistent with the stated digit string.
"""

from __future__ import annotations

import pytest

from majorsystem.cli import _load_resources, build_parser
from majorsystem.corpus import Lexicon, LexiconEntry, LexiconStats
from majorsystem.encoders import EncoderResources
from majorsystem.index import EncodingIndex

# one representative consonant per digit for synthesized pronunciations
DIGIT_PHONES = {"0": "S", "1": "T", "2": "N", "3": "M", "4": "R",
                "5": "L", "6": "CH", "7": "K", "8": "F", "9": "P"}


def entry(word: str, digits: str, pos: str = "NOUN", frequency: int = 1,
          pronunciations=None) -> LexiconEntry:
    if pronunciations is None:
        phones = tuple(DIGIT_PHONES[d] for d in digits) or ("AH",)
        pronunciations = (phones,)
    return LexiconEntry(word=word, digits=digits, pos=pos,
                        frequency=frequency, pronunciations=pronunciations)


def make_lexicon(rows) -> Lexicon:
    """Build a Lexicon from (word, digits, pos, frequency) rows."""
    entries = {}
    for word, digits, pos, frequency in sorted(rows):
        entries[word] = entry(word, digits, pos, frequency)
    stats = LexiconStats(
        corpus_tokens=sum(e.frequency for e in entries.values()),
        corpus_types=len(entries),
        corpus_types_lowercased=len(entries),
        corpus_sentences=1,
        dictionary_words=len(entries),
    )
    return Lexicon(entries, stats)


def make_index(rows) -> EncodingIndex:
    return EncodingIndex(make_lexicon(rows))


@pytest.fixture(scope="session")
def real() -> EncoderResources:
    """Lexicon, index, models, and templates over the vendored data."""
    args = build_parser().parse_args(["stats"])
    _, resources = _load_resources(args)
    return resources
