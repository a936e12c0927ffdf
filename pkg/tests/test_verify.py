"""Decoder, round-trip checker, and metrics tests."""

import logging
import math
from random import Random

import pytest

from conftest import entry, make_lexicon
from majorsystem.corpus import Lexicon, LexiconStats
from majorsystem.encoders import Encoding, encode_sentence
from majorsystem.langmodel import NgramModel
from majorsystem.verify import (Metrics, RoundtripReport, UnknownWordError,
                                check_roundtrip, compute_metrics, decode)

ROWS = [
    ("'em", "3", "PRON", 2),
    ("p.m.", "93", "NOUN", 3),
    ("tent", "121", "NOUN", 5),
    ("toe", "1", "NOUN", 30),
]


def lexicon_of(*entries) -> Lexicon:
    ordered = {e.word: e for e in sorted(entries, key=lambda e: e.word)}
    stats = LexiconStats(
        corpus_tokens=sum(e.frequency for e in ordered.values()),
        corpus_types=len(ordered),
        corpus_types_lowercased=len(ordered),
        corpus_sentences=1,
        dictionary_words=len(ordered),
    )
    return Lexicon(ordered, stats)


class TestDecode:
    @pytest.fixture
    def lexicon(self) -> Lexicon:
        return make_lexicon(ROWS)

    def test_concatenates_word_digits(self, lexicon):
        assert decode(["tent", "toe"], lexicon) == "1211"

    def test_case_insensitive(self, lexicon):
        assert decode(["Tent"], lexicon) == "121"

    def test_edge_punctuation_stripped(self, lexicon):
        assert decode(["tent,", "(toe)", '"tent."'], lexicon) == "1211121"

    def test_exact_lookup_wins_before_stripping(self, lexicon):
        assert decode(["p.m."], lexicon) == "93"

    def test_apostrophes_survive(self, lexicon):
        assert decode(["'em"], lexicon) == "3"

    def test_pure_punctuation_skipped(self, lexicon):
        assert decode(["tent", "...", "?!"], lexicon) == "121"

    def test_unknown_word_raises(self, lexicon):
        with pytest.raises(UnknownWordError) as info:
            decode(["tent", "xylograph"], lexicon)
        assert info.value.word == "xylograph"

    def test_empty_sequence(self, lexicon):
        assert decode([], lexicon) == ""

    def test_ambiguous_pronunciations_warn_and_use_first(self, caplog):
        tent = entry("tent", "121",
                     pronunciations=(("T", "EH", "N", "T"), ("T", "OW")))
        lexicon = lexicon_of(tent)
        with caplog.at_level(logging.WARNING, logger="majorsystem.verify"):
            digits = decode(["tent"], lexicon)
        assert digits == "121"
        assert any("tent" in record.message for record in caplog.records)

    def test_agreeing_pronunciations_stay_quiet(self, caplog):
        read = entry("read", "41",
                     pronunciations=(("R", "IY", "D"), ("R", "EH", "D")))
        lexicon = lexicon_of(read)
        with caplog.at_level(logging.WARNING, logger="majorsystem.verify"):
            assert decode(["read"], lexicon) == "41"
        assert not caplog.records


def encoding_of(words, spans, source=None) -> Encoding:
    return Encoding(
        source_digits="".join(spans) if source is None else source,
        encoder="unigram",
        sentences=(tuple(words),),
        spans=(tuple(spans),),
        tags=(tuple(None for _ in words),),
        closed=(False,),
    )


class TestCheckRoundtrip:
    @pytest.fixture
    def lexicon(self) -> Lexicon:
        return make_lexicon(ROWS)

    def test_valid_encoding_passes(self, lexicon):
        report = check_roundtrip(encoding_of(["tent", "toe"], ["121", "1"]),
                                 lexicon)
        assert report == RoundtripReport(True)

    def test_unknown_word_reports_position(self, lexicon):
        report = check_roundtrip(
            encoding_of(["tent", "xylograph"], ["121", "1"]), lexicon)
        assert not report.ok
        assert report.position == 1
        assert "xylograph" in report.reason

    def test_span_mismatch_reports_position(self, lexicon):
        report = check_roundtrip(encoding_of(["tent", "toe"], ["121", "12"]),
                                 lexicon)
        assert not report.ok
        assert report.position == 1
        assert "'1'" in report.reason

    def test_source_mismatch_reported(self, lexicon):
        report = check_roundtrip(
            encoding_of(["tent"], ["121"], source="1219"), lexicon)
        assert not report.ok
        assert report.position is None

    def test_empty_encoding_passes(self, lexicon):
        empty = Encoding("", "unigram", (), (), (), ())
        assert check_roundtrip(empty, lexicon).ok


class TestComputeMetrics:
    @pytest.fixture
    def lexicon(self) -> Lexicon:
        return make_lexicon(ROWS)

    @pytest.fixture
    def model(self) -> NgramModel:
        return NgramModel.train([["tent", "toe"]] * 2, n=3, alpha=0.1)

    def test_counts_and_means(self, lexicon, model):
        metrics = compute_metrics(encoding_of(["tent", "toe"], ["121", "1"]),
                                  lexicon, model)
        assert metrics.word_count == 2
        assert metrics.sentence_count == 1
        assert metrics.digits_per_word == 2.0
        assert metrics.mean_word_frequency == 17.5
        assert metrics.model_score == pytest.approx(0.0)

    def test_context_resets_per_sentence(self, lexicon, model):
        encoding = Encoding(
            source_digits="1211",
            encoder="ngram",
            sentences=(("tent",), ("toe",)),
            spans=(("121",), ("1",)),
            tags=((None,), (None,)),
            closed=(True, False),
        )
        metrics = compute_metrics(encoding, lexicon, model)
        assert metrics.sentence_count == 2
        assert metrics.model_score == pytest.approx(math.log(0.005))

    def test_unseen_word_scores_minus_infinity(self, model):
        lexicon = make_lexicon(ROWS + [("moon", "32", "NOUN", 7)])
        metrics = compute_metrics(encoding_of(["moon"], ["32"]),
                                  lexicon, model)
        assert metrics.model_score == -math.inf

    def test_empty_encoding_zeroes(self, lexicon, model):
        empty = Encoding("", "unigram", (), (), (), ())
        metrics = compute_metrics(empty, lexicon, model)
        assert metrics == Metrics(0, 0, 0.0, 0.0, 0.0)


class TestRealData:
    def test_worked_decodes(self, real):
        assert decode(["tent"], real.lexicon) == "121"
        assert decode(["officiate", "wasteland"], real.lexicon) == "86101521"
        assert decode("vouching wits widely and".split(),
                      real.lexicon) == "86101521"

    def test_sentence_encoding_roundtrips(self, real):
        encoding = encode_sentence("86101521", real.index, real.word_model,
                                   real.templates, rng=Random(7))
        assert check_roundtrip(encoding, real.lexicon).ok
        assert decode(encoding.words, real.lexicon) == "86101521"
