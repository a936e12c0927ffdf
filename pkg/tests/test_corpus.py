"""Dictionary and corpus parsing, lexicon build, lexicon cache tests."""

import re

import pytest

from majorsystem.corpus import (CmudictFormatError, CorpusFormatError,
                                EmptyLexiconError, Lexicon, LexiconCacheError,
                                TaggedCorpus, build_lexicon, default_data_dir,
                                load_lexicon, map_tag, parse_cmudict,
                                parse_tag_map, save_lexicon)
from majorsystem.phonetics import UnknownPhonemeError

TAG_MAP = {"at": "DET", "nn": "NOUN", "vb": "VERB", "vbd": "VERB",
           "rb": "ADV", ".": ".", ",": "."}


class TestParseCmudict:
    def test_basic_entry(self):
        prons = parse_cmudict(["tent T EH1 N T"])
        assert prons == {"tent": (("T", "EH", "N", "T"),)}

    def test_comments_and_blanks_skipped(self):
        prons = parse_cmudict([";;; header", "", "toe T OW1"])
        assert list(prons) == ["toe"]

    def test_alternates_fold_in_order(self):
        prons = parse_cmudict(["a AH0", "a(2) EY1"])
        assert prons["a"] == (("AH",), ("EY",))

    def test_words_lowercased(self):
        prons = parse_cmudict(["TENT T EH1 N T"])
        assert "tent" in prons

    def test_malformed_line_reports_number(self):
        with pytest.raises(CmudictFormatError, match="2"):
            parse_cmudict(["toe T OW1", "lonely"])

    def test_unknown_phoneme_reports_number(self):
        with pytest.raises(UnknownPhonemeError, match="3"):
            parse_cmudict(["toe T OW1", "tin T IH1 N", "bad QX1"])

    def test_reads_from_path(self, tmp_path):
        path = tmp_path / "dict"
        path.write_text("tent T EH1 N T\n", encoding="utf-8")
        assert "tent" in parse_cmudict(path)


class TestParseTagMap:
    def test_basic(self, tmp_path):
        path = tmp_path / "map"
        path.write_text("# comment\nat\tDET\nnn NOUN\n", encoding="utf-8")
        assert parse_tag_map(path) == {"at": "DET", "nn": "NOUN"}

    def test_bad_columns(self, tmp_path):
        path = tmp_path / "map"
        path.write_text("at DET NOUN\n", encoding="utf-8")
        with pytest.raises(CorpusFormatError, match="1"):
            parse_tag_map(path)

    def test_unknown_target(self, tmp_path):
        path = tmp_path / "map"
        path.write_text("at DETERMINER\n", encoding="utf-8")
        with pytest.raises(CorpusFormatError):
            parse_tag_map(path)


class TestMapTag:
    def test_full_tag_wins(self):
        assert map_tag("vbd", TAG_MAP) == "VERB"

    def test_base_before_hyphen(self):
        assert map_tag("nn-tl", TAG_MAP) == "NOUN"

    def test_base_before_plus(self):
        assert map_tag("vb+ppo", TAG_MAP) == "VERB"

    def test_unmapped_falls_to_x(self):
        assert map_tag("zz-weird", TAG_MAP) == "X"

    def test_case_insensitive(self):
        assert map_tag("NN", TAG_MAP) == "NOUN"


class TestTaggedCorpus:
    def test_sentences_and_tags(self, tmp_path):
        path = tmp_path / "corpus"
        path.write_text("The/at dog/nn ran/vbd ./.\n\nhe/nn sat/vbd ,/,\n",
                        encoding="utf-8")
        corpus = TaggedCorpus.load(path, TAG_MAP)
        assert corpus.sentences == [
            (("the", "DET"), ("dog", "NOUN"), ("ran", "VERB"), (".", ".")),
            (("he", "NOUN"), ("sat", "VERB"), (",", ".")),
        ]
        assert corpus.sentence_count == 2
        assert corpus.token_count == 7

    def test_type_counts_before_and_after_lowercasing(self, tmp_path):
        path = tmp_path / "corpus"
        path.write_text("The/at the/at THE/at dog/nn\n", encoding="utf-8")
        corpus = TaggedCorpus.load(path, TAG_MAP)
        assert corpus.type_count == 4
        assert corpus.lowercased_type_count == 2

    def test_token_without_tag_reports_position(self, tmp_path):
        path = tmp_path / "corpus"
        path.write_text("the/at dog ran/vbd\n", encoding="utf-8")
        with pytest.raises(CorpusFormatError, match="token 2"):
            TaggedCorpus.load(path, TAG_MAP)

    def test_directory_read_in_sorted_order(self, tmp_path):
        (tmp_path / "b_second").write_text("dog/nn\n", encoding="utf-8")
        (tmp_path / "a_first").write_text("the/at\n", encoding="utf-8")
        corpus = TaggedCorpus.load(tmp_path, TAG_MAP)
        assert corpus.sentences == [(("the", "DET"),), (("dog", "NOUN"),)]

    def test_empty_directory_rejected(self, tmp_path):
        with pytest.raises(CorpusFormatError):
            TaggedCorpus.load(tmp_path, TAG_MAP)


def corpus_from(text: str, tmp_path) -> TaggedCorpus:
    path = tmp_path / "corpus"
    path.write_text(text, encoding="utf-8")
    return TaggedCorpus.load(path, TAG_MAP)


class TestBuildLexicon:
    def test_entry_fields(self, tmp_path):
        prons = parse_cmudict(["tent T EH1 N T", "dog D AO1 G"])
        corpus = corpus_from("the/at tent/nn ./.\ntent/nn dog/nn\n", tmp_path)
        lexicon = build_lexicon(prons, corpus)
        assert sorted(e.word for e in lexicon) == ["dog", "tent"]
        tent = lexicon["tent"]
        assert tent.digits == "121"
        assert tent.pos == "NOUN"
        assert tent.frequency == 2

    def test_digits_from_first_pronunciation(self, tmp_path):
        prons = parse_cmudict(["read R IY1 D", "read(2) R EH1 D"])
        corpus = corpus_from("read/vb\n", tmp_path)
        assert build_lexicon(prons, corpus)["read"].digits == "41"

    def test_dominant_pos_tie_alphabetical(self, tmp_path):
        prons = parse_cmudict(["tent T EH1 N T"])
        corpus = corpus_from("tent/nn tent/vb\ntent/vb tent/nn\n", tmp_path)
        assert build_lexicon(prons, corpus)["tent"].pos == "NOUN"

    def test_corpus_only_words_excluded(self, tmp_path):
        prons = parse_cmudict(["tent T EH1 N T"])
        corpus = corpus_from("tent/nn xylograph/nn\n", tmp_path)
        lexicon = build_lexicon(prons, corpus)
        assert "xylograph" not in lexicon

    def test_zero_digit_word_kept(self, tmp_path):
        prons = parse_cmudict(["a AH0", "tent T EH1 N T"])
        corpus = corpus_from("a/at tent/nn\n", tmp_path)
        lexicon = build_lexicon(prons, corpus)
        assert lexicon["a"].digits == ""

    def test_empty_intersection_rejected(self, tmp_path):
        prons = parse_cmudict(["tent T EH1 N T"])
        corpus = corpus_from("dog/nn\n", tmp_path)
        with pytest.raises(EmptyLexiconError):
            build_lexicon(prons, corpus)

    def test_entries_sorted_by_word(self, tmp_path):
        prons = parse_cmudict(["tent T EH1 N T", "dog D AO1 G", "ant AE1 N T"])
        corpus = corpus_from("tent/nn dog/nn ant/nn\n", tmp_path)
        lexicon = build_lexicon(prons, corpus)
        assert [e.word for e in lexicon] == sorted(e.word for e in lexicon)


class TestLexiconCache:
    def build(self, tmp_path) -> Lexicon:
        prons = parse_cmudict(["a AH0", "a(2) EY1", "tent T EH1 N T"])
        corpus = corpus_from("a/at tent/nn a/nn\n", tmp_path)
        return build_lexicon(prons, corpus)

    def test_roundtrip(self, tmp_path):
        lexicon = self.build(tmp_path)
        path = tmp_path / "lexicon.tsv"
        save_lexicon(lexicon, path)
        loaded = load_lexicon(path)
        assert loaded.stats == lexicon.stats
        assert loaded.entries == lexicon.entries

    def test_save_is_byte_stable(self, tmp_path):
        lexicon = self.build(tmp_path)
        first = tmp_path / "one.tsv"
        second = tmp_path / "two.tsv"
        save_lexicon(lexicon, first)
        save_lexicon(load_lexicon(first), second)
        assert first.read_bytes() == second.read_bytes()

    def test_wrong_magic_rejected(self, tmp_path):
        path = tmp_path / "lexicon.tsv"
        path.write_text("not a lexicon\n", encoding="utf-8")
        with pytest.raises(LexiconCacheError):
            load_lexicon(path)

    def test_truncated_line_rejected(self, tmp_path):
        lexicon = self.build(tmp_path)
        path = tmp_path / "lexicon.tsv"
        save_lexicon(lexicon, path)
        lines = path.read_text(encoding="utf-8").splitlines()
        lines[-1] = "tent\t121"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        with pytest.raises(LexiconCacheError):
            load_lexicon(path)


class TestRealData:
    def test_cmudict_entry_count_matches_line_scan(self):
        path = default_data_dir() / "cmudict.dict"
        words = set()
        for line in path.read_text(encoding="utf-8").splitlines():
            if not line or line.startswith(";;;"):
                continue
            words.add(re.sub(r"\(\d+\)$", "", line.split()[0]).lower())
        assert len(parse_cmudict(path)) == len(words)

    def test_lexicon_shape(self, real):
        lexicon = real.lexicon
        assert 27_200 <= len(lexicon) <= 40_800
        assert lexicon["officiate"].digits == "861"
        assert lexicon["officiate"].pos == "VERB"
        assert lexicon["wasteland"].digits == "01521"
        assert lexicon["tent"].digits == "121"

    def test_lexicon_cache_roundtrip_real(self, real, tmp_path):
        path = tmp_path / "lexicon.tsv"
        save_lexicon(real.lexicon, path)
        loaded = load_lexicon(path)
        assert len(loaded) == len(real.lexicon)
        assert loaded.entries == real.lexicon.entries
        assert loaded.stats == real.lexicon.stats
