"""The six digit-to-words encoders and the bigram post-processing pass.

All encoders share one shape: walk the remaining digits left to right,
pick a word whose digit string is a prefix of what remains, repeat.
They differ in how the word is chosen:

  random    uniform choice among the words spelling the longest prefix
  unigram   most frequent word among the longest-prefix set
  ngram     argmax (or sample) of Stupid Backoff score, any prefix length
  pos       ngram choice restricted by a POS trigram's tag ranking
  chunk     fixed NP VP NP sentences, each slot spelling one digit chunk
  sentence  corpus-derived POS templates filled slot by slot

Sentence context resets at every sentence boundary.  Every encoder
output decodes back to exactly the input digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .corpus import Lexicon
from .index import EncodingIndex, NoCandidateError
from .langmodel import (END, SKIPPABLE_TAGS, START, NgramModel, PosTrigramModel,
                        TemplateStore)

__all__ = [
    "ENCODER_NAMES",
    "NP_PATTERNS",
    "VP_PATTERNS",
    "EncoderConfig",
    "EncoderResources",
    "Encoding",
    "UnencodableError",
    "UnencodableChunkError",
    "encode",
    "encode_random",
    "encode_unigram",
    "encode_ngram",
    "encode_pos",
    "encode_chunk",
    "encode_sentence",
    "post_process",
]

ENCODER_NAMES = ("random", "unigram", "ngram", "pos", "chunk", "sentence")

NP_PATTERNS: tuple[tuple[str, ...], ...] = (
    ("NOUN",), ("PRON",), ("DET", "NOUN"), ("ADJ", "NOUN"))
VP_PATTERNS: tuple[tuple[str, ...], ...] = (
    ("VERB",), ("VERB", "ADV"), ("ADV", "VERB"), ("VERB", "PRT"))


class UnencodableError(Exception):
    """The digits cannot be encoded with this lexicon and model."""


class UnencodableChunkError(UnencodableError):
    """No phrase realization spells the chunk."""

    def __init__(self, chunk: str):
        super().__init__(f"no phrase realization spells chunk {chunk!r}")
        self.chunk = chunk


@dataclass(frozen=True)
class EncoderConfig:
    encoder_kind: str = "sentence"
    n: int = 3
    alpha: float = 0.1
    weight_power: float = 10.0
    ngram_mode: str = "argmax"
    seed: int | None = None
    chunk_size: int = 3
    skippable_tags: frozenset[str] = SKIPPABLE_TAGS
    retry_limit: int = 100
    run_post_process: bool = True

    def __post_init__(self):
        if self.encoder_kind not in ENCODER_NAMES:
            raise ValueError(f"unknown encoder {self.encoder_kind!r}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.weight_power < 0:
            raise ValueError("weight_power must be nonnegative")
        if self.ngram_mode not in ("argmax", "sample"):
            raise ValueError(f"unknown ngram_mode {self.ngram_mode!r}")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be at least 1")
        if self.retry_limit < 1:
            raise ValueError("retry_limit must be at least 1")


@dataclass(frozen=True)
class Encoding:
    """Words spelling a digit string, grouped into sentences.

    spans holds the digits consumed by each word, parallel to
    sentences; their concatenation is exactly source_digits.  tags
    holds the slot tag a word was chosen under, None where the encoder
    has no tag notion.  closed marks sentences rendered with a final
    period.
    """

    source_digits: str
    encoder: str
    sentences: tuple[tuple[str, ...], ...]
    spans: tuple[tuple[str, ...], ...]
    tags: tuple[tuple[str | None, ...], ...]
    closed: tuple[bool, ...]

    @property
    def words(self) -> list[str]:
        return [word for sentence in self.sentences for word in sentence]

    @property
    def word_spans(self) -> list[str]:
        return [span for sentence in self.spans for span in sentence]

    @property
    def word_count(self) -> int:
        return sum(len(sentence) for sentence in self.sentences)

    def text(self) -> str:
        """Render as capitalized sentences, periods on closed ones."""
        parts = []
        for sentence, closed in zip(self.sentences, self.closed):
            rendered = " ".join(sentence)
            rendered = rendered[0].upper() + rendered[1:]
            parts.append(rendered + "." if closed else rendered)
        return " ".join(parts)

    def to_records(self) -> list[dict]:
        """Flatten to JSON-friendly records, lossless for from_records."""
        records: list[dict] = [{
            "record": "encoding",
            "digits": self.source_digits,
            "encoder": self.encoder,
            "sentence_count": len(self.sentences),
        }]
        for index, (sentence, closed) in enumerate(zip(self.sentences, self.closed)):
            records.append({"record": "sentence", "index": index,
                            "closed": closed, "word_count": len(sentence)})
            for word, span, tag in zip(sentence, self.spans[index], self.tags[index]):
                records.append({"record": "word", "sentence": index,
                                "word": word, "span": span, "tag": tag})
        return records

    @classmethod
    def from_records(cls, records: list[dict]) -> "Encoding":
        """Rebuild an Encoding written by to_records."""
        if not records or records[0].get("record") != "encoding":
            raise ValueError("records must start with an encoding header")
        header = records[0]
        sentences: list[list[str]] = []
        spans: list[list[str]] = []
        tags: list[list[str | None]] = []
        closed: list[bool] = []
        for record in records[1:]:
            kind = record.get("record")
            if kind == "sentence":
                if record["index"] != len(sentences):
                    raise ValueError("sentence records out of order")
                sentences.append([])
                spans.append([])
                tags.append([])
                closed.append(bool(record["closed"]))
            elif kind == "word":
                if record["sentence"] != len(sentences) - 1:
                    raise ValueError("word record outside its sentence")
                sentences[-1].append(record["word"])
                spans[-1].append(record["span"])
                tags[-1].append(record["tag"])
            else:
                raise ValueError(f"unknown record kind {kind!r}")
        if len(sentences) != header["sentence_count"]:
            raise ValueError("sentence count mismatch")
        return cls(
            source_digits=header["digits"],
            encoder=header["encoder"],
            sentences=tuple(tuple(s) for s in sentences),
            spans=tuple(tuple(s) for s in spans),
            tags=tuple(tuple(t) for t in tags),
            closed=tuple(closed),
        )


@dataclass
class EncoderResources:
    """Everything the dispatcher needs to run any encoder."""

    lexicon: Lexicon
    index: EncodingIndex
    word_model: NgramModel
    pos_model: PosTrigramModel
    templates: TemplateStore


class _Builder:
    """Accumulates sentences, spans, and tags for an Encoding."""

    def __init__(self, digits: str, encoder: str):
        self.digits = digits
        self.encoder = encoder
        self.sentences: list[tuple[str, ...]] = []
        self.spans: list[tuple[str, ...]] = []
        self.tags: list[tuple[str | None, ...]] = []
        self.closed: list[bool] = []
        self._words: list[str] = []
        self._spans: list[str] = []
        self._tags: list[str | None] = []

    @property
    def open_words(self) -> int:
        return len(self._words)

    def add(self, word: str, span: str, tag: str | None = None) -> None:
        self._words.append(word)
        self._spans.append(span)
        self._tags.append(tag)

    def close(self, closed: bool = True) -> None:
        if not self._words:
            return
        self.sentences.append(tuple(self._words))
        self.spans.append(tuple(self._spans))
        self.tags.append(tuple(self._tags))
        self.closed.append(closed)
        self._words, self._spans, self._tags = [], [], []

    def finish(self, close_last: bool = False) -> Encoding:
        self.close(closed=close_last)
        return Encoding(
            source_digits=self.digits,
            encoder=self.encoder,
            sentences=tuple(self.sentences),
            spans=tuple(self.spans),
            tags=tuple(self.tags),
            closed=tuple(self.closed),
        )


def _check_digits(digits: str) -> None:
    if not all(ch in "0123456789" for ch in digits):
        raise ValueError(f"input must be decimal digits: {digits!r}")


def _best_scored(scored: list[tuple[float, str, int]]) -> tuple[str, int]:
    """Pick max score; ties go to the lexicographically smallest token."""
    best_score, best_token, best_length = scored[0]
    for score, token, length in scored[1:]:
        if score > best_score or (score == best_score and token < best_token):
            best_score, best_token, best_length = score, token, length
    return best_token, best_length


def encode_random(digits: str, index: EncodingIndex, rng: Random) -> Encoding:
    """Uniform choice among the words spelling the longest prefix."""
    _check_digits(digits)
    builder = _Builder(digits, "random")
    remaining = digits
    while remaining:
        try:
            length, words = index.max_prefix_candidates(remaining)
        except NoCandidateError as exc:
            raise UnencodableError(str(exc)) from None
        word = words[rng.randrange(len(words))]
        builder.add(word, remaining[:length])
        remaining = remaining[length:]
    return builder.finish()


def encode_unigram(digits: str, index: EncodingIndex, lexicon: Lexicon) -> Encoding:
    """Most frequent word among the longest-prefix set, ties alphabetical."""
    _check_digits(digits)
    builder = _Builder(digits, "unigram")
    remaining = digits
    while remaining:
        try:
            length, words = index.max_prefix_candidates(remaining)
        except NoCandidateError as exc:
            raise UnencodableError(str(exc)) from None
        word = min(words, key=lambda w: (-lexicon[w].frequency, w))
        builder.add(word, remaining[:length])
        remaining = remaining[length:]
    return builder.finish()


def encode_ngram(digits: str, index: EncodingIndex, model: NgramModel,
                 config: EncoderConfig | None = None,
                 rng: Random | None = None) -> Encoding:
    """Backoff-scored choice over prefixes of any length.

    The sentence-end token competes as a zero-digit candidate once the
    current sentence has at least one word; choosing it closes the
    sentence and resets the context.  argmax mode is deterministic,
    sample mode draws proportionally to the scores and needs rng.
    """
    _check_digits(digits)
    config = config or EncoderConfig(encoder_kind="ngram")
    if config.ngram_mode == "sample" and rng is None:
        raise ValueError("sample mode needs an rng")
    builder = _Builder(digits, "ngram")
    context = model.start_context()
    remaining = digits
    while remaining:
        candidates = index.prefix_candidates(remaining)
        if not candidates:
            raise UnencodableError(f"no word spells a prefix of {remaining!r}")
        if builder.open_words:
            candidates = candidates + [(END, 0)]
        scored = [(model.score(context, token), token, length)
                  for token, length in candidates]
        if config.ngram_mode == "argmax":
            token, length = _best_scored(scored)
        else:
            total = sum(score for score, _, _ in scored)
            if total > 0.0:
                point = rng.random() * total
                running = 0.0
                token, length = scored[-1][1], scored[-1][2]
                for score, tok, ln in scored:
                    running += score
                    if point < running:
                        token, length = tok, ln
                        break
            else:
                token, length = candidates[rng.randrange(len(candidates))]
        if token == END:
            builder.close()
            context = model.start_context()
        else:
            builder.add(token, remaining[:length])
            remaining = remaining[length:]
            context = context + (token,)
    return builder.finish(close_last=False)


def encode_pos(digits: str, index: EncodingIndex, word_model: NgramModel,
               pos_model: PosTrigramModel) -> Encoding:
    """Backoff choice restricted by a POS trigram's tag ranking.

    Tags are tried from most to least likely after the two previous
    words' tags; the first tag with candidates supplies the word.
    """
    _check_digits(digits)
    builder = _Builder(digits, "pos")
    word_context = word_model.start_context()
    tag_context = pos_model.start_context()
    remaining = digits
    while remaining:
        chosen = None
        for tag in pos_model.most_likely_tags(tag_context):
            candidates = index.prefix_candidates(remaining, pos=tag)
            if not candidates:
                continue
            scored = [(word_model.score(word_context, word), word, length)
                      for word, length in candidates]
            word, length = _best_scored(scored)
            chosen = (word, length, tag)
            break
        if chosen is None:
            raise UnencodableError(f"no tag yields a word for {remaining!r}")
        word, length, tag = chosen
        builder.add(word, remaining[:length], tag)
        word_context = word_context + (word,)
        tag_context = tag_context + (tag,)
        remaining = remaining[length:]
    return builder.finish(close_last=False)


def _chunk_realizations(chunk: str, patterns: tuple[tuple[str, ...], ...],
                        index: EncodingIndex):
    """All (words, spans, tags) realizing the chunk under the patterns."""
    out = []
    for pattern in patterns:
        if len(pattern) == 1:
            for word in index.exact_candidates(chunk, pos=pattern[0]):
                out.append(((word,), (chunk,), pattern))
        else:
            for split in range(1, len(chunk)):
                left, right = chunk[:split], chunk[split:]
                first_words = index.exact_candidates(left, pos=pattern[0])
                if not first_words:
                    continue
                for second in index.exact_candidates(right, pos=pattern[1]):
                    for first in first_words:
                        out.append(((first, second), (left, right), pattern))
    return out


def encode_chunk(digits: str, index: EncodingIndex, bigram_model: NgramModel,
                 config: EncoderConfig | None = None) -> Encoding:
    """Fixed NP VP NP sentences, each slot spelling one digit chunk.

    Each chunk becomes one or two words matching its slot's phrase
    patterns; the realization with the best bigram-score product wins.
    A slot whose own patterns cannot spell the chunk falls back to the
    other family's patterns before giving up.
    """
    _check_digits(digits)
    config = config or EncoderConfig(encoder_kind="chunk")
    size = config.chunk_size
    builder = _Builder(digits, "chunk")
    previous = START
    for position in range(0, len(digits), size):
        chunk = digits[position:position + size]
        slot = position // size % 3
        own = VP_PATTERNS if slot == 1 else NP_PATTERNS
        other = NP_PATTERNS if slot == 1 else VP_PATTERNS
        realizations = _chunk_realizations(chunk, own, index)
        if not realizations:
            realizations = _chunk_realizations(chunk, other, index)
        if not realizations:
            raise UnencodableChunkError(chunk)
        best = None
        best_key = None
        for words, spans, pattern in realizations:
            score = bigram_model.score((previous,), words[0])
            if len(words) == 2:
                score *= bigram_model.score((words[0],), words[1])
            key = (-score, len(words), words)
            if best_key is None or key < best_key:
                best, best_key = (words, spans, pattern), key
        words, spans, pattern = best
        for word, span, tag in zip(words, spans, pattern):
            builder.add(word, span, tag)
        previous = words[-1]
        if slot == 2:
            builder.close()
            previous = START
    return builder.finish(close_last=True)


def encode_sentence(digits: str, index: EncodingIndex, word_model: NgramModel,
                    templates: TemplateStore, config: EncoderConfig | None = None,
                    rng: Random | None = None) -> Encoding:
    """Fill frequency-sampled POS templates slot by slot.

    Per slot the candidates are the prefix words of the slot's tag
    (PRON slots also admit NOUN), scored by backoff score times
    digits_consumed ** weight_power.  Skippable slots are skipped when
    empty; a mandatory slot with no candidates discards the partial
    sentence and resamples, up to the retry limit.  Running out of
    digits mid-template ends the encoding.  A bigram post-processing
    pass then reconsiders each word among its same-span alternatives.
    """
    _check_digits(digits)
    config = config or EncoderConfig()
    if rng is None:
        raise ValueError("sentence encoder needs an rng")
    builder = _Builder(digits, "sentence")
    remaining = digits
    retries = 0
    while remaining:
        template = templates.sample(rng)
        context = word_model.start_context()
        words: list[str] = []
        spans: list[str] = []
        tags: list[str] = []
        attempt_start = remaining
        local_remaining = remaining
        failed = False
        for tag in template.tags:
            if not local_remaining:
                break
            if tag == ".":
                # sentence boundary inside the template: commit and reset
                if words:
                    for word, span, slot_tag in zip(words, spans, tags):
                        builder.add(word, span, slot_tag)
                    builder.close()
                    remaining = local_remaining
                    words, spans, tags = [], [], []
                    context = word_model.start_context()
                continue
            candidates = index.prefix_candidates(local_remaining, pos=tag)
            if tag == "PRON":
                candidates = candidates + index.prefix_candidates(local_remaining, pos="NOUN")
            if not candidates:
                if tag in config.skippable_tags:
                    continue
                failed = True
                break
            scored = [(word_model.score(context, word) * length ** config.weight_power,
                       word, length) for word, length in candidates]
            word, length = _best_scored(scored)
            words.append(word)
            spans.append(local_remaining[:length])
            tags.append(tag)
            context = context + (word,)
            local_remaining = local_remaining[length:]
        if failed:
            retries += 1
            if retries >= config.retry_limit:
                raise UnencodableError(
                    f"no template fits after {retries} resamples at {remaining!r}")
            continue
        if words:
            for word, span, slot_tag in zip(words, spans, tags):
                builder.add(word, span, slot_tag)
            builder.close()
            remaining = local_remaining
        if remaining == attempt_start:
            # a template that consumed nothing cannot make progress
            retries += 1
            if retries >= config.retry_limit:
                raise UnencodableError(
                    f"no template fits after {retries} resamples at {remaining!r}")
    encoding = builder.finish()
    if config.run_post_process:
        encoding = post_process(encoding, index, word_model)
    return encoding


def post_process(encoding: Encoding, index: EncodingIndex,
                 bigram_model: NgramModel) -> Encoding:
    """Rescore each word among the words spelling the same digit span.

    Left-to-right passes per sentence, in place: a candidate is scored
    by the bigram score after the (possibly already replaced)
    preceding word times the bigram score of the following word given
    the candidate.  The pass repeats until it changes nothing, so the
    result is a fixpoint and the operation is idempotent.  Each
    replacement either raises the product of the two adjacent bigram
    scores or, on a tie, lowers the word lexicographically, so the
    iteration terminates.  Spans never change, so decoding is
    preserved.
    """
    new_sentences = []
    for words, spans in zip(encoding.sentences, encoding.spans):
        current = list(words)
        changed = True
        while changed:
            changed = False
            for position, span in enumerate(spans):
                previous = current[position - 1] if position else START
                following = current[position + 1] if position + 1 < len(current) else END
                candidates = index.exact_candidates(span)
                scored = [(bigram_model.score((previous,), candidate)
                           * bigram_model.score((candidate,), following),
                           candidate, 0) for candidate in candidates]
                best, _ = _best_scored(scored)
                if best != current[position]:
                    current[position] = best
                    changed = True
        new_sentences.append(tuple(current))
    return Encoding(
        source_digits=encoding.source_digits,
        encoder=encoding.encoder,
        sentences=tuple(new_sentences),
        spans=encoding.spans,
        tags=encoding.tags,
        closed=encoding.closed,
    )


def encode(digits: str, resources: EncoderResources,
           config: EncoderConfig | None = None,
           rng: Random | None = None) -> Encoding:
    """Run the encoder named by config.encoder_kind."""
    config = config or EncoderConfig()
    if rng is None:
        rng = Random(config.seed)
    kind = config.encoder_kind
    if kind == "random":
        return encode_random(digits, resources.index, rng)
    if kind == "unigram":
        return encode_unigram(digits, resources.index, resources.lexicon)
    if kind == "ngram":
        return encode_ngram(digits, resources.index, resources.word_model, config, rng)
    if kind == "pos":
        return encode_pos(digits, resources.index, resources.word_model,
                          resources.pos_model)
    if kind == "chunk":
        return encode_chunk(digits, resources.index, resources.word_model, config)
    return encode_sentence(digits, resources.index, resources.word_model,
                           resources.templates, config, rng)
