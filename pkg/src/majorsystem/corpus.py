"""Data ingestion: pronouncing dictionary, tagged corpus, lexicon.

The encodable lexicon is the intersection of a CMU-format pronouncing
dictionary with a part-of-speech tagged corpus.  Each entry carries the
word's digit string (from its first listed pronunciation), its dominant
universal POS tag, and its corpus frequency.

Corpus format: one sentence per nonempty line, tokens as word/TAG.
Raw tags are mapped to the 12-tag universal set through a two-column
map file; lookup tries the full tag, then its base (the segment before
the first '+' or '-'), then falls back to X.
"""

from __future__ import annotations

import re
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from pathlib import Path

from .phonetics import ARPABET, UnknownPhonemeError, pronunciation_to_digits, strip_stress

__all__ = [
    "UNIVERSAL_TAGS",
    "CorpusError",
    "CmudictFormatError",
    "CorpusFormatError",
    "EmptyLexiconError",
    "LexiconCacheError",
    "LexiconEntry",
    "LexiconStats",
    "Lexicon",
    "TaggedCorpus",
    "parse_cmudict",
    "parse_tag_map",
    "build_lexicon",
    "save_lexicon",
    "load_lexicon",
    "default_data_dir",
]

Pronunciation = tuple[str, ...]
TaggedSentence = tuple[tuple[str, str], ...]

UNIVERSAL_TAGS: tuple[str, ...] = (
    "VERB", "NOUN", "PRON", "ADJ", "ADV", "ADP",
    "CONJ", "DET", "NUM", "PRT", "X", ".",
)

_ALTERNATE = re.compile(r"\((\d+)\)$")
_BASE_SPLIT = re.compile(r"[+-]")

_LEXICON_MAGIC = "#majorsystem-lexicon v1"


class CorpusError(Exception):
    """Base class for data and parse errors."""


class CmudictFormatError(CorpusError):
    """Malformed pronouncing dictionary line."""


class CorpusFormatError(CorpusError):
    """Malformed tagged corpus or tag map content."""


class EmptyLexiconError(CorpusError):
    """Dictionary and corpus share no words."""


class LexiconCacheError(CorpusError):
    """Lexicon cache file is unreadable or from another version."""


@dataclass(frozen=True)
class LexiconEntry:
    word: str
    digits: str
    pos: str
    frequency: int
    pronunciations: tuple[Pronunciation, ...]


@dataclass(frozen=True)
class LexiconStats:
    corpus_tokens: int
    corpus_types: int
    corpus_types_lowercased: int
    corpus_sentences: int
    dictionary_words: int


class Lexicon:
    """Encodable words keyed by spelling, plus build statistics."""

    def __init__(self, entries: dict[str, LexiconEntry], stats: LexiconStats):
        self.entries = entries
        self.stats = stats

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def get(self, word: str) -> LexiconEntry | None:
        return self.entries.get(word)

    def __getitem__(self, word: str) -> LexiconEntry:
        return self.entries[word]

    def __iter__(self) -> Iterator[LexiconEntry]:
        return iter(self.entries.values())


def default_data_dir() -> Path:
    """Locate the repository data directory next to the source tree."""
    return Path(__file__).resolve().parents[2] / "data"


def _dict_lines(source: str | Path | Iterable[str]) -> tuple[str, Iterable[str]]:
    if isinstance(source, (str, Path)):
        path = Path(source)
        return str(path), path.read_text(encoding="utf-8").splitlines()
    return "<cmudict>", source


def parse_cmudict(source: str | Path | Iterable[str]) -> dict[str, tuple[Pronunciation, ...]]:
    """Parse a CMU-format pronouncing dictionary.

    Each line is a word followed by its space-separated Arpabet phones.
    Lines starting with ";;;" are comments.  Alternate pronunciations
    use a "(n)" suffix on the word and fold into the same entry in file
    order.  Words are lowercased, stress markers are stripped.

    Raises CmudictFormatError for a line without phones and
    UnknownPhonemeError for a phone outside the Arpabet inventory,
    both with the offending line number.
    """
    name, lines = _dict_lines(source)
    prons: dict[str, list[Pronunciation]] = {}
    for line_no, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith(";;;"):
            continue
        fields = line.split()
        if len(fields) < 2:
            raise CmudictFormatError(f"{name}:{line_no}: expected word and phones: {line!r}")
        word = _ALTERNATE.sub("", fields[0]).lower()
        phones = []
        for field in fields[1:]:
            symbol = strip_stress(field)
            if symbol not in ARPABET:
                raise UnknownPhonemeError(f"{name}:{line_no}: unknown phoneme {field!r}")
            phones.append(symbol)
        prons.setdefault(word, []).append(tuple(phones))
    return {word: tuple(entries) for word, entries in prons.items()}


def parse_tag_map(source: str | Path) -> dict[str, str]:
    """Parse a two-column raw-tag to universal-tag map file.

    Blank lines and '#' comment lines are skipped.  Target tags must
    belong to the universal set.
    """
    path = Path(source)
    mapping: dict[str, str] = {}
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise CorpusFormatError(f"{path}:{line_no}: expected two columns: {line!r}")
        raw, universal = fields
        if universal not in UNIVERSAL_TAGS:
            raise CorpusFormatError(f"{path}:{line_no}: unknown universal tag {universal!r}")
        mapping[raw.lower()] = universal
    return mapping


def map_tag(raw: str, tag_map: dict[str, str]) -> str:
    """Map a raw corpus tag to its universal tag (full, base, then X)."""
    raw = raw.lower()
    universal = tag_map.get(raw)
    if universal is not None:
        return universal
    base = _BASE_SPLIT.split(raw, maxsplit=1)[0]
    return tag_map.get(base, "X")


class TaggedCorpus:
    """Tagged sentences plus token and type tallies.

    Type counts are taken over surface forms as written, before
    lowercasing, which is how corpus sizes are conventionally quoted;
    a lowercased count is kept alongside.
    """

    def __init__(self, sentences: list[TaggedSentence], token_count: int,
                 type_count: int, lowercased_type_count: int):
        self.sentences = sentences
        self.token_count = token_count
        self.type_count = type_count
        self.lowercased_type_count = lowercased_type_count

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)

    @classmethod
    def load(cls, source: str | Path, tag_map: dict[str, str]) -> "TaggedCorpus":
        """Read a tagged corpus from a file or a directory of files.

        Directory contents are read in sorted filename order so the
        result is stable.  A token without a '/' separator raises
        CorpusFormatError naming the file, line, and token position.
        """
        root = Path(source)
        if root.is_dir():
            files = sorted(p for p in root.iterdir() if p.is_file())
            if not files:
                raise CorpusFormatError(f"{root}: no corpus files")
        else:
            files = [root]

        sentences: list[TaggedSentence] = []
        raw_types: set[str] = set()
        lower_types: set[str] = set()
        token_count = 0
        for path in files:
            for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
                if not line.strip():
                    continue
                sentence = []
                for position, token in enumerate(line.split(), start=1):
                    word, sep, tag = token.rpartition("/")
                    if not sep or not word:
                        raise CorpusFormatError(
                            f"{path}:{line_no}: token {position} has no tag: {token!r}")
                    raw_types.add(word)
                    word = word.lower()
                    lower_types.add(word)
                    token_count += 1
                    sentence.append((word, map_tag(tag, tag_map)))
                sentences.append(tuple(sentence))
        return cls(sentences, token_count, len(raw_types), len(lower_types))


def build_lexicon(pronunciations: dict[str, tuple[Pronunciation, ...]],
                  corpus: TaggedCorpus) -> Lexicon:
    """Intersect dictionary and corpus into the encodable lexicon.

    An entry's digits come from its first listed pronunciation, its POS
    is the most frequent universal tag for the word in the corpus (ties
    broken alphabetically), and its frequency is the corpus token
    count.  Entries are stored in sorted word order.  Words whose
    pronunciation encodes no digits are kept; they still decode to the
    empty string.
    """
    frequency: Counter[str] = Counter()
    tag_counts: dict[str, Counter[str]] = {}
    for sentence in corpus.sentences:
        for word, tag in sentence:
            frequency[word] += 1
            counts = tag_counts.get(word)
            if counts is None:
                counts = tag_counts[word] = Counter()
            counts[tag] += 1

    entries: dict[str, LexiconEntry] = {}
    for word in sorted(pronunciations.keys() & frequency.keys()):
        prons = pronunciations[word]
        counts = tag_counts[word]
        pos = min(counts, key=lambda tag: (-counts[tag], tag))
        entries[word] = LexiconEntry(
            word=word,
            digits=pronunciation_to_digits(prons[0]),
            pos=pos,
            frequency=frequency[word],
            pronunciations=prons,
        )
    if not entries:
        raise EmptyLexiconError("dictionary and corpus share no words")

    stats = LexiconStats(
        corpus_tokens=corpus.token_count,
        corpus_types=corpus.type_count,
        corpus_types_lowercased=corpus.lowercased_type_count,
        corpus_sentences=corpus.sentence_count,
        dictionary_words=len(pronunciations),
    )
    return Lexicon(entries, stats)


def save_lexicon(lexicon: Lexicon, path: str | Path) -> None:
    """Write a lexicon as a versioned flat file (stable byte-for-byte)."""
    stats = lexicon.stats
    lines = [
        _LEXICON_MAGIC,
        "#stats corpus_tokens={} corpus_types={} corpus_types_lowercased={} "
        "corpus_sentences={} dictionary_words={}".format(
            stats.corpus_tokens, stats.corpus_types, stats.corpus_types_lowercased,
            stats.corpus_sentences, stats.dictionary_words),
    ]
    for entry in lexicon:
        phones = "|".join(" ".join(pron) for pron in entry.pronunciations)
        lines.append("\t".join(
            [entry.word, entry.digits, entry.pos, str(entry.frequency), phones]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_lexicon(path: str | Path) -> Lexicon:
    """Read a lexicon written by save_lexicon."""
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != _LEXICON_MAGIC:
        raise LexiconCacheError(f"{path}: not a v1 lexicon cache")
    if len(lines) < 2 or not lines[1].startswith("#stats "):
        raise LexiconCacheError(f"{path}: missing stats line")
    try:
        fields = dict(item.split("=") for item in lines[1][len("#stats "):].split())
        stats = LexiconStats(
            corpus_tokens=int(fields["corpus_tokens"]),
            corpus_types=int(fields["corpus_types"]),
            corpus_types_lowercased=int(fields["corpus_types_lowercased"]),
            corpus_sentences=int(fields["corpus_sentences"]),
            dictionary_words=int(fields["dictionary_words"]),
        )
    except (KeyError, ValueError) as exc:
        raise LexiconCacheError(f"{path}: bad stats line") from exc

    entries: dict[str, LexiconEntry] = {}
    for line_no, line in enumerate(lines[2:], start=3):
        fields = line.split("\t")
        if len(fields) != 5:
            raise LexiconCacheError(f"{path}:{line_no}: expected 5 fields")
        word, digits, pos, frequency, phones = fields
        pronunciations = tuple(
            tuple(pron.split()) for pron in phones.split("|"))
        entries[word] = LexiconEntry(
            word=word, digits=digits, pos=pos,
            frequency=int(frequency), pronunciations=pronunciations)
    if not entries:
        raise LexiconCacheError(f"{path}: empty lexicon")
    return Lexicon(entries, stats)
